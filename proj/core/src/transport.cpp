#include "recirc/transport.hpp"

#include "recirc/assembly.hpp"
#include "recirc/fe.hpp"
#include "recirc/quadrature.hpp"

namespace recirc {

namespace {

std::array<int, 6> local_dofs(const Mesh& mesh, int t) {
    const auto& tr = mesh.triangles[t];
    const auto& te = mesh.triangle_edges[t];
    const int nv = mesh.vertex_count();
    return {tr[0], tr[1], tr[2], nv + te[0], nv + te[1], nv + te[2]};
}

Foot resolve_foot(const Mesh& mesh, Vec2 p) {
    Foot foot;
    foot.point = p;
    PointLocation loc = locate_point(mesh, p);
    if (!loc.inside) {
        foot.clamped = true;
        foot.point = loc.closest_boundary;
        loc = locate_point(mesh, foot.point);
        if (!loc.inside)
            throw numerical_error("characteristic foot failed to resolve after clamping");
    }
    foot.triangle = loc.triangle;
    foot.bary = loc.bary;
    return foot;
}

double eval_scalar(const Mesh& mesh, const Vector& field, const Foot& foot) {
    const auto ld = local_dofs(mesh, foot.triangle);
    const auto bv = p2_values(foot.bary);
    double v = 0.0;
    for (int i = 0; i < 6; ++i) v += field[ld[i]] * bv[i];
    return v;
}

Vec2 eval_vector(const Mesh& mesh, const Vector& field, const Foot& foot) {
    const auto ld = local_dofs(mesh, foot.triangle);
    const auto bv = p2_values(foot.bary);
    Vec2 v{0.0, 0.0};
    for (int i = 0; i < 6; ++i) {
        v.x += field[2 * ld[i]] * bv[i];
        v.y += field[2 * ld[i] + 1] * bv[i];
    }
    return v;
}

}  // namespace

FootSet characteristic_feet(const Mesh& mesh, const DofMap& dm, const Vector& velocity, double dt,
                            std::span<const Vec2> eval_points) {
    if (dt <= 0.0) throw param_error("characteristic_feet: dt must be positive");
    if (static_cast<int>(velocity.size()) != dm.vector_q2_count())
        throw param_error("characteristic_feet: velocity dof count mismatch");

    FootSet fs;
    fs.feet.reserve(eval_points.size());
    for (const Vec2& p : eval_points) {
        const PointLocation here = locate_point(mesh, p);
        if (!here.inside) throw param_error("characteristic_feet: evaluation point outside mesh");
        Foot src;
        src.triangle = here.triangle;
        src.bary = here.bary;
        const Vec2 v = eval_vector(mesh, velocity, src);
        fs.feet.push_back(resolve_foot(mesh, p - dt * v));
    }
    return fs;
}

Vector interpolate_field(const Mesh& mesh, const DofMap& dm, const Vector& field,
                         const FootSet& feet) {
    const bool vector_field = static_cast<int>(field.size()) == dm.vector_q2_count();
    if (!vector_field && static_cast<int>(field.size()) != dm.scalar_q2_count())
        throw param_error("interpolate_field: field dof count mismatch");

    Vector out(vector_field ? 2 * feet.feet.size() : feet.feet.size());
    for (std::size_t k = 0; k < feet.feet.size(); ++k) {
        const Foot& f = feet.feet[k];
        if (f.triangle < 0) throw numerical_error("interpolate_field: unresolved foot");
        if (vector_field) {
            const Vec2 v = eval_vector(mesh, field, f);
            out[2 * k] = v.x;
            out[2 * k + 1] = v.y;
        } else {
            out[k] = eval_scalar(mesh, field, f);
        }
    }
    return out;
}

namespace {

template <bool Vectorial>
Vector advected_rhs_impl(const Mesh& mesh, const DofMap& dm, const Vector& prev_field,
                         const Vector& velocity, double dt) {
    if (dt <= 0.0) throw param_error("advected_rhs: dt must be positive");
    if (static_cast<int>(velocity.size()) != dm.vector_q2_count())
        throw param_error("advected_rhs: velocity dof count mismatch");

    const auto& rule = triangle_rule_d5();
    const std::size_t nq = rule.points.size();
    std::vector<std::array<double, 6>> basis(nq);
    for (std::size_t q = 0; q < nq; ++q) basis[q] = p2_values(rule.points[q]);

    Vector load(Vectorial ? dm.vector_q2_count() : dm.scalar_q2_count(), 0.0);
    const double alpha = 1.0 / dt;

    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const double area = mesh.triangle_area(t);
        const auto ld = local_dofs(mesh, t);
        for (std::size_t q = 0; q < nq; ++q) {
            const auto& bv = basis[q];
            Vec2 p{0.0, 0.0}, vel{0.0, 0.0};
            for (int i = 0; i < 6; ++i) {
                vel.x += velocity[2 * ld[i]] * bv[i];
                vel.y += velocity[2 * ld[i] + 1] * bv[i];
            }
            p = mesh.barycentric_to_point(t, rule.points[q]);
            const Foot foot = resolve_foot(mesh, p - dt * vel);
            const double w = alpha * rule.weights[q] * area;
            if constexpr (Vectorial) {
                const Vec2 v = eval_vector(mesh, prev_field, foot);
                for (int i = 0; i < 6; ++i) {
                    load[2 * ld[i]] += w * v.x * bv[i];
                    load[2 * ld[i] + 1] += w * v.y * bv[i];
                }
            } else {
                const double v = eval_scalar(mesh, prev_field, foot);
                for (int i = 0; i < 6; ++i) load[ld[i]] += w * v * bv[i];
            }
        }
    }
    return load;
}

}  // namespace

Vector advected_rhs(const Mesh& mesh, const DofMap& dm, const Vector& prev_field,
                    const Vector& velocity, double dt) {
    return advected_rhs_impl<false>(mesh, dm, prev_field, velocity, dt);
}

Vector advected_rhs_vector(const Mesh& mesh, const DofMap& dm, const Vector& prev_field,
                           const Vector& velocity, double dt) {
    return advected_rhs_impl<true>(mesh, dm, prev_field, velocity, dt);
}

}  // namespace recirc
