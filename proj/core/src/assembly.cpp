#include "recirc/assembly.hpp"

#include <cmath>

#include "recirc/fe.hpp"
#include "recirc/quadrature.hpp"

namespace recirc {

namespace {

/// Local scalar dofs of triangle t: vertices then edge midpoints (01,12,20).
std::array<int, 6> local_dofs(const Mesh& mesh, int t) {
    const auto& tr = mesh.triangles[t];
    const auto& te = mesh.triangle_edges[t];
    const int nv = mesh.vertex_count();
    return {tr[0], tr[1], tr[2], nv + te[0], nv + te[1], nv + te[2]};
}

struct EdgeQuad {
    double length;
    Vec2 a, b;
};

EdgeQuad edge_geometry(const Mesh& mesh, const BoundaryEdge& be) {
    const Vec2 pa = mesh.vertices[be.a], pb = mesh.vertices[be.b];
    return {norm(pb - pa), pa, pb};
}

}  // namespace

double BoundaryData::eval(double s, int a, int b, int mid, Vec2 p) const {
    switch (kind_) {
        case Kind::Constant: return c_;
        case Kind::Dofs: {
            const auto tr = edge_p2_values(s);
            return dofs_[a] * tr[0] + dofs_[b] * tr[1] + dofs_[mid] * tr[2];
        }
        case Kind::Function: return fn_(p);
    }
    return 0.0;
}

SparseMatrix assemble_scalar_mass(const Mesh& mesh, const DofMap& dm) {
    const auto& rule = triangle_rule_d5();
    const int n = dm.scalar_q2_count();
    TripletAccumulator acc(n, n);

    std::vector<std::array<double, 6>> basis(rule.points.size());
    for (std::size_t q = 0; q < rule.points.size(); ++q) basis[q] = p2_values(rule.points[q]);

    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const double area = mesh.triangle_area(t);
        const auto ld = local_dofs(mesh, t);
        double local[6][6] = {};
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const double w = rule.weights[q] * area;
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j) local[i][j] += w * basis[q][i] * basis[q][j];
        }
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) acc.add(ld[i], ld[j], local[i][j]);
    }
    return acc.compress(true);
}

SparseMatrix assemble_scalar_stiffness(const Mesh& mesh, const DofMap& dm, double K) {
    if (K <= 0.0) throw param_error("assemble_scalar_stiffness: K must be positive");
    const auto& rule = triangle_rule_d5();
    const int n = dm.scalar_q2_count();
    TripletAccumulator acc(n, n);

    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const double area = mesh.triangle_area(t);
        const auto gl = mesh.barycentric_gradients(t);
        const auto ld = local_dofs(mesh, t);
        double local[6][6] = {};
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const auto g = p2_gradients(rule.points[q], gl);
            const double w = K * rule.weights[q] * area;
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j) local[i][j] += w * dot(g[i], g[j]);
        }
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) acc.add(ld[i], ld[j], local[i][j]);
    }
    return acc.compress(true);
}

std::pair<SparseMatrix, Vector> assemble_boundary_terms(const Mesh& mesh, const DofMap& dm,
                                                        const std::vector<BoundaryTag>& tags,
                                                        double coefficient,
                                                        const BoundaryData& data) {
    const auto& rule = edge_rule();
    const int n = dm.scalar_q2_count();
    TripletAccumulator acc(n, n);
    Vector load(n, 0.0);

    for (const auto& be : mesh.boundary_edges) {
        bool match = false;
        for (const auto& tg : tags)
            if (be.tag == tg) match = true;
        if (!match) continue;

        const auto geo = edge_geometry(mesh, be);
        const int dofs[3] = {be.a, be.b, be.mid_dof};
        double local[3][3] = {};
        double lload[3] = {};
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const double s = rule.points[q];
            const double w = coefficient * rule.weights[q] * geo.length;
            const auto tr = edge_p2_values(s);
            const Vec2 p = (1.0 - s) * geo.a + s * geo.b;
            const double d = data.eval(s, be.a, be.b, be.mid_dof, p);
            for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j) local[i][j] += w * tr[i] * tr[j];
                lload[i] += w * d * tr[i];
            }
        }
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) acc.add(dofs[i], dofs[j], local[i][j]);
            load[dofs[i]] += lload[i];
        }
    }
    return {acc.compress(true), std::move(load)};
}

std::pair<SparseMatrix, Vector> assemble_radiative(const Mesh& mesh, const DofMap& dm, double b2S,
                                                   const Vector& theta_lag,
                                                   const BoundaryData& Tr_values) {
    const auto& rule = edge_rule();
    const int n = dm.scalar_q2_count();
    TripletAccumulator acc(n, n);
    Vector load(n, 0.0);

    for (const auto& be : mesh.boundary_edges) {
        if (be.tag.kind != BoundaryTag::S) continue;
        const auto geo = edge_geometry(mesh, be);
        const int dofs[3] = {be.a, be.b, be.mid_dof};
        double local[3][3] = {};
        double lload[3] = {};
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const double s = rule.points[q];
            const double w = b2S * rule.weights[q] * geo.length;
            const auto tr = edge_p2_values(s);
            const double lag = theta_lag[be.a] * tr[0] + theta_lag[be.b] * tr[1] +
                               theta_lag[be.mid_dof] * tr[2];
            const double weight3 = std::abs(lag) * lag * lag;  // |lag|^3
            const Vec2 p = (1.0 - s) * geo.a + s * geo.b;
            const double Tr = Tr_values.eval(s, be.a, be.b, be.mid_dof, p);
            const double Tr4 = Tr * Tr * Tr * Tr;
            for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j) local[i][j] += w * weight3 * tr[i] * tr[j];
                lload[i] += w * Tr4 * tr[i];
            }
        }
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) acc.add(dofs[i], dofs[j], local[i][j]);
            load[dofs[i]] += lload[i];
        }
    }
    return {acc.compress(true), std::move(load)};
}

HydroBlocks assemble_hydro_blocks(const Mesh& mesh, const DofMap& dm, const PhysicalParams& params,
                                  const Vector& v_lag, const Vector& theta_new,
                                  const Vector& theta0, const Vector& advected_momentum_rhs,
                                  double dt) {
    const int ns = dm.scalar_q2_count();
    const int nv = dm.vector_q2_count();
    const int np = dm.scalar_q1_count();
    if (static_cast<int>(v_lag.size()) != nv || static_cast<int>(theta_new.size()) != ns ||
        static_cast<int>(theta0.size()) != ns || static_cast<int>(advected_momentum_rhs.size()) != nv)
        throw param_error("assemble_hydro_blocks: dof count mismatch");

    const auto& rule = triangle_rule_d5();
    const double alpha = 1.0 / dt;
    TripletAccumulator accA(nv, nv);
    TripletAccumulator accB(np, nv);
    HydroBlocks blocks;
    blocks.f = advected_momentum_rhs;
    blocks.pressure_weights.assign(np, 0.0);

    std::vector<std::array<double, 6>> basis(rule.points.size());
    for (std::size_t q = 0; q < rule.points.size(); ++q) basis[q] = p2_values(rule.points[q]);

    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const double area = mesh.triangle_area(t);
        const auto gl = mesh.barycentric_gradients(t);
        const auto ld = local_dofs(mesh, t);
        const auto& tr = mesh.triangles[t];

        double localA[12][12] = {};
        double localB[3][12] = {};
        double localF[12] = {};

        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const double w = rule.weights[q] * area;
            const auto& bv = basis[q];
            const auto g = p2_gradients(rule.points[q], gl);

            // lagged symmetric-gradient magnitude for the Smagorinsky weight
            double exx = 0.0, eyy = 0.0, exy = 0.0;
            double th = 0.0, th0 = 0.0;
            for (int i = 0; i < 6; ++i) {
                const double ux = v_lag[2 * ld[i]], uy = v_lag[2 * ld[i] + 1];
                exx += ux * g[i].x;
                eyy += uy * g[i].y;
                exy += 0.5 * (ux * g[i].y + uy * g[i].x);
                th += theta_new[ld[i]] * bv[i];
                th0 += theta0[ld[i]] * bv[i];
            }
            const double eps_norm = std::sqrt(exx * exx + eyy * eyy + 2.0 * exy * exy);
            const double visc = 2.0 * params.nu + 2.0 * params.nu_tur * eps_norm;

            for (int i = 0; i < 6; ++i) {
                for (int j = 0; j < 6; ++j) {
                    const double mass = alpha * w * bv[i] * bv[j];
                    // eps(phi_j e_d) : eps(phi_i e_c)
                    const double e00 = g[i].x * g[j].x + 0.5 * g[i].y * g[j].y;
                    const double e01 = 0.5 * g[i].y * g[j].x;
                    const double e10 = 0.5 * g[i].x * g[j].y;
                    const double e11 = g[i].y * g[j].y + 0.5 * g[i].x * g[j].x;
                    localA[2 * i][2 * j] += mass + w * visc * e00;
                    localA[2 * i][2 * j + 1] += w * visc * e01;
                    localA[2 * i + 1][2 * j] += w * visc * e10;
                    localA[2 * i + 1][2 * j + 1] += mass + w * visc * e11;
                }
                // Boussinesq forcing: a warm anomaly is pushed against gravity
                const double buoy = -params.alpha0 * (th - th0) * w * bv[i];
                localF[2 * i] += buoy * params.a_g.x;
                localF[2 * i + 1] += buoy * params.a_g.y;
                // -int psi_p (div v), psi_p the linear vertex functions
                for (int pl = 0; pl < 3; ++pl) {
                    const double psi = rule.points[q][pl];
                    localB[pl][2 * i] -= w * psi * g[i].x;
                    localB[pl][2 * i + 1] -= w * psi * g[i].y;
                }
            }
            for (int pl = 0; pl < 3; ++pl)
                blocks.pressure_weights[tr[pl]] += w * rule.points[q][pl];
        }

        for (int i = 0; i < 6; ++i) {
            for (int c = 0; c < 2; ++c) {
                const int gi = 2 * ld[i] + c;
                for (int j = 0; j < 6; ++j)
                    for (int d = 0; d < 2; ++d)
                        accA.add(gi, 2 * ld[j] + d, localA[2 * i + c][2 * j + d]);
                blocks.f[gi] += localF[2 * i + c];
            }
        }
        for (int pl = 0; pl < 3; ++pl)
            for (int i = 0; i < 12; ++i)
                accB.add(tr[pl], 2 * ld[i / 2] + (i % 2), localB[pl][i]);

        blocks.area += area;
    }

    blocks.A = accA.compress(true);
    blocks.B = accB.compress(false);
    blocks.suggested_step = 0.5 * (2.0 * params.nu / (mesh.h * mesh.h) + 1.0 / dt);
    return blocks;
}

std::vector<Vec2> quadrature_points(const Mesh& mesh) {
    const auto& rule = triangle_rule_d5();
    std::vector<Vec2> pts;
    pts.reserve(mesh.triangle_count() * rule.points.size());
    for (int t = 0; t < mesh.triangle_count(); ++t)
        for (const auto& l : rule.points) pts.push_back(mesh.barycentric_to_point(t, l));
    return pts;
}

double integrate_scalar(const Mesh& mesh, const DofMap& dm, const Vector& field) {
    (void)dm;
    const auto& rule = triangle_rule_d5();
    double total = 0.0;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const double area = mesh.triangle_area(t);
        const auto ld = local_dofs(mesh, t);
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const auto bv = p2_values(rule.points[q]);
            double v = 0.0;
            for (int i = 0; i < 6; ++i) v += field[ld[i]] * bv[i];
            total += rule.weights[q] * area * v;
        }
    }
    return total;
}

double scalar_l2(const Mesh& mesh, const DofMap& dm, const Vector& field) {
    (void)dm;
    const auto& rule = triangle_rule_d5();
    double total = 0.0;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const double area = mesh.triangle_area(t);
        const auto ld = local_dofs(mesh, t);
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const auto bv = p2_values(rule.points[q]);
            double v = 0.0;
            for (int i = 0; i < 6; ++i) v += field[ld[i]] * bv[i];
            total += rule.weights[q] * area * v * v;
        }
    }
    return std::sqrt(total);
}

double grad_l2_sq(const Mesh& mesh, const DofMap& dm, const Vector& field) {
    (void)dm;
    const auto& rule = triangle_rule_d5();
    double total = 0.0;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const double area = mesh.triangle_area(t);
        const auto gl = mesh.barycentric_gradients(t);
        const auto ld = local_dofs(mesh, t);
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const auto g = p2_gradients(rule.points[q], gl);
            Vec2 gr{0.0, 0.0};
            for (int i = 0; i < 6; ++i) gr = gr + field[ld[i]] * g[i];
            total += rule.weights[q] * area * dot(gr, gr);
        }
    }
    return total;
}

double vector_l2(const Mesh& mesh, const DofMap& dm, const Vector& field) {
    (void)dm;
    const auto& rule = triangle_rule_d5();
    double total = 0.0;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const double area = mesh.triangle_area(t);
        const auto ld = local_dofs(mesh, t);
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const auto bv = p2_values(rule.points[q]);
            double ux = 0.0, uy = 0.0;
            for (int i = 0; i < 6; ++i) {
                ux += field[2 * ld[i]] * bv[i];
                uy += field[2 * ld[i] + 1] * bv[i];
            }
            total += rule.weights[q] * area * (ux * ux + uy * uy);
        }
    }
    return std::sqrt(total);
}

double boundary_lp_integral(const Mesh& mesh, const DofMap& dm, const Vector& field,
                            BoundaryTag tag, double p) {
    (void)dm;
    const auto& rule = edge_rule();
    double total = 0.0;
    for (const auto& be : mesh.boundary_edges) {
        if (!(be.tag == tag) && !(tag.kind == be.tag.kind && tag.pump < 0)) continue;
        const auto geo = edge_geometry(mesh, be);
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const auto tr = edge_p2_values(rule.points[q]);
            const double v =
                field[be.a] * tr[0] + field[be.b] * tr[1] + field[be.mid_dof] * tr[2];
            total += rule.weights[q] * geo.length * std::pow(std::abs(v), p);
        }
    }
    return total;
}

double sym_grad_l2(const Mesh& mesh, const DofMap& dm, const Vector& velocity) {
    (void)dm;
    const auto& rule = triangle_rule_d5();
    double total = 0.0;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const double area = mesh.triangle_area(t);
        const auto gl = mesh.barycentric_gradients(t);
        const auto ld = local_dofs(mesh, t);
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const auto g = p2_gradients(rule.points[q], gl);
            double exx = 0.0, eyy = 0.0, exy = 0.0;
            for (int i = 0; i < 6; ++i) {
                const double ux = velocity[2 * ld[i]], uy = velocity[2 * ld[i] + 1];
                exx += ux * g[i].x;
                eyy += uy * g[i].y;
                exy += 0.5 * (ux * g[i].y + uy * g[i].x);
            }
            total += rule.weights[q] * area * (exx * exx + eyy * eyy + 2.0 * exy * exy);
        }
    }
    return std::sqrt(total);
}

Vector interpolate_scalar(const DofMap& dm, const std::function<double(Vec2)>& f) {
    Vector v(dm.scalar_q2_count());
    for (int i = 0; i < dm.scalar_q2_count(); ++i) v[i] = f(dm.q2_coords[i]);
    return v;
}

Vector interpolate_velocity(const DofMap& dm, const std::function<Vec2(Vec2)>& f) {
    Vector v(dm.vector_q2_count());
    for (int i = 0; i < dm.scalar_q2_count(); ++i) {
        const Vec2 val = f(dm.q2_coords[i]);
        v[2 * i] = val.x;
        v[2 * i + 1] = val.y;
    }
    return v;
}

}  // namespace recirc
