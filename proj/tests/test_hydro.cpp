#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "recirc/assembly.hpp"
#include "recirc/fe.hpp"
#include "recirc/hydro.hpp"
#include "recirc/linalg.hpp"
#include "recirc/quadrature.hpp"
#include "support/oracles.hpp"

using namespace recirc;

namespace {

Mesh pump_mesh() {
    PumpLayout l;
    l.pairs.push_back({{Side::Left, 0.5, 0.75}, {Side::Bottom, 0.75, 1.0}});
    return build_rect_mesh(2.0, 1.0, 0.25, l);
}

}  // namespace

TEST_CASE("pump boundary velocity: values, signs and flux balance") {
    const Mesh m = pump_mesh();
    const DofMap dm = make_dof_map(m);

    SUBCASE("all pumps off gives all-zero Dirichlet data") {
        const PumpVelocityBC bc = pump_boundary_velocity(m, dm, {0.0}, 0.1);
        for (auto [d, v] : bc.values) CHECK(v == 0.0);
        // every boundary dof is still constrained (no-slip walls)
        std::size_t boundary_dofs = 0;
        std::set<int> seen;
        for (const auto& [tag, dofs] : dm.tag_dofs)
            for (int d : dofs) seen.insert(d);
        boundary_dofs = seen.size();
        CHECK(bc.values.size() == 2 * boundary_dofs);
    }

    SUBCASE("turbinating: inflow at the injector, outflow at the collector") {
        const double g = 2.0e-3;
        const PumpVelocityBC bc = pump_boundary_velocity(m, dm, {g}, 0.1);
        const double muC = boundary_measure(m, {BoundaryTag::C, 0});
        const double muT = boundary_measure(m, {BoundaryTag::T, 0});
        CHECK(muC == doctest::Approx(0.25));
        CHECK(muT == doctest::Approx(0.25));

        std::map<int, double> val(bc.values.begin(), bc.values.end());
        for (int d : dm.tag_dofs.at({BoundaryTag::C, 0})) {
            CHECK(val.at(2 * d) == doctest::Approx(-g / muC));  // outward through x = 0
            CHECK(val.at(2 * d + 1) == doctest::Approx(0.0));
        }
        for (int d : dm.tag_dofs.at({BoundaryTag::T, 0})) {
            CHECK(val.at(2 * d) == doctest::Approx(0.0));
            CHECK(val.at(2 * d + 1) == doctest::Approx(g / muT));  // inward through y = 0
        }
    }

    SUBCASE("reference rate on 1 m spans gives |v| = 2e-3 m/s") {
        PumpLayout l;
        l.pairs.push_back({{Side::Left, 1.0, 2.0}, {Side::Bottom, 1.0, 2.0}});
        const Mesh m1 = build_rect_mesh(4.0, 4.0, 0.25, l);
        const DofMap dm1 = make_dof_map(m1);
        const PumpVelocityBC bc = pump_boundary_velocity(m1, dm1, {2.0e-3}, 0.1);
        std::map<int, double> val(bc.values.begin(), bc.values.end());
        for (int d : dm1.tag_dofs.at({BoundaryTag::C, 0}))
            CHECK(val.at(2 * d) == doctest::Approx(-2.0e-3));
        for (int d : dm1.tag_dofs.at({BoundaryTag::T, 0}))
            CHECK(val.at(2 * d + 1) == doctest::Approx(2.0e-3));
    }

    SUBCASE("discrete net flux vanishes for equal span measures") {
        const double g = 2.0e-3;
        const PumpVelocityBC bc = pump_boundary_velocity(m, dm, {g}, 0.1);
        Vector v(dm.vector_q2_count(), 0.0);
        for (auto [d, value] : bc.values) v[d] = value;

        // quadrature of v . n over the whole boundary
        const auto& rule = edge_rule();
        double flux = 0.0;
        for (const auto& be : m.boundary_edges) {
            const Vec2 n = side_normal(be.side);
            const double len = norm(m.vertices[be.b] - m.vertices[be.a]);
            for (std::size_t q = 0; q < rule.points.size(); ++q) {
                const auto tr = edge_p2_values(rule.points[q]);
                const double vn = dot(n, {v[2 * be.a] * tr[0] + v[2 * be.b] * tr[1] +
                                              v[2 * be.mid_dof] * tr[2],
                                          v[2 * be.a + 1] * tr[0] + v[2 * be.b + 1] * tr[1] +
                                              v[2 * be.mid_dof + 1] * tr[2]});
                flux += rule.weights[q] * len * vn;
            }
        }
        CHECK(std::abs(flux) <= 1e-12 * g);
    }

    SUBCASE("rates above the bound are rejected") {
        CHECK_THROWS_AS(pump_boundary_velocity(m, dm, {0.5}, 0.1), param_error);
        CHECK_THROWS_AS(pump_boundary_velocity(m, dm, {0.1, 0.1}, 0.1), param_error);
    }
}

TEST_CASE("zero data yields zero velocity and pressure") {
    const Mesh m = pump_mesh();
    const DofMap dm = make_dof_map(m);
    PhysicalParams params;
    params.theta0 = 283.0;
    const Vector theta(dm.scalar_q2_count(), 283.0);
    const Vector v0(dm.vector_q2_count(), 0.0);

    const HydroStepResult res = solve_velocity_step(m, dm, v0, theta, {0.0}, params, 100.0);
    CHECK(res.report.converged);
    CHECK(norm_inf(res.v) <= 1e-12);
    CHECK(norm_inf(res.p) <= 1e-9);
}

TEST_CASE("buoyancy sanity: a warm bottom layer rises") {
    const Mesh m = build_rect_mesh(1.0, 1.0, 0.125, PumpLayout::none());
    const DofMap dm = make_dof_map(m);
    PhysicalParams params;
    params.nu = 1.0e-2;
    params.nu_tur = 0.0;
    params.alpha0 = 1.0e-3;
    params.theta0 = 283.0;

    const Vector theta = interpolate_scalar(
        dm, [](Vec2 p) { return p.y < 0.5 ? 284.0 : 283.0; });
    const Vector v0(dm.vector_q2_count(), 0.0);
    const HydroStepResult res = solve_velocity_step(m, dm, v0, theta, {}, params, 10.0);
    REQUIRE(res.report.converged);
    CHECK(norm_inf(res.v) > 0.0);

    // integrate v_y over the bottom half
    const auto& rule = triangle_rule_d5();
    double vy_int = 0.0;
    for (int t = 0; t < m.triangle_count(); ++t) {
        const auto& tr = m.triangles[t];
        const auto& te = m.triangle_edges[t];
        const int nv = m.vertex_count();
        const std::array<int, 6> ld = {tr[0], tr[1], tr[2], nv + te[0], nv + te[1], nv + te[2]};
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const Vec2 p = m.barycentric_to_point(t, rule.points[q]);
            if (p.y >= 0.5) continue;
            const auto bv = p2_values(rule.points[q]);
            double vy = 0.0;
            for (int i = 0; i < 6; ++i) vy += res.v[2 * ld[i] + 1] * bv[i];
            vy_int += rule.weights[q] * m.triangle_area(t) * vy;
        }
    }
    CHECK(vy_int > 0.0);
}

TEST_CASE("velocity step is dissipative without forcing") {
    const Mesh m = build_rect_mesh(1.0, 1.0, 0.125, PumpLayout::none());
    const DofMap dm = make_dof_map(m);
    PhysicalParams params;
    params.nu = 0.1;
    params.nu_tur = 0.0;
    params.alpha0 = 0.0;
    const double dt = 0.01;

    auto stream_velocity = [](Vec2 p) {
        const double x = p.x, y = p.y;
        const double bx = x * (1.0 - x), by = y * (1.0 - y);
        // v = curl of (bx*by)^2: vanishes with its tangential component on the walls
        return Vec2{0.01 * bx * bx * 2.0 * by * (1.0 - 2.0 * y),
                    -0.01 * 2.0 * bx * (1.0 - 2.0 * x) * by * by};
    };
    Vector v = interpolate_velocity(dm, stream_velocity);
    const Vector theta(dm.scalar_q2_count(), 283.0);

    double prev = vector_l2(m, dm, v);
    for (int n = 0; n < 3; ++n) {
        const HydroStepResult res = solve_velocity_step(m, dm, v, theta, {}, params, dt);
        REQUIRE(res.report.converged);
        const double now = vector_l2(m, dm, res.v);
        CHECK(now <= prev * (1.0 + 1e-10));
        v = res.v;
        prev = now;
    }
}

TEST_CASE("increasing nu_tur does not increase the symmetric-gradient norm") {
    // first step of the all-turbinating reference configuration
    const Mesh m = build_rect_mesh(16.0, 19.0, 1.0, PumpLayout::symmetric4(16.0, 19.0));
    const DofMap dm = make_dof_map(m);
    const Vector theta(dm.scalar_q2_count(), 283.0);
    const Vector v0(dm.vector_q2_count(), 0.0);

    double eps_norms[2];
    int idx = 0;
    for (const double nu_tur : {5.0e-2, 5.0e-1}) {
        PhysicalParams params;
        params.nu_tur = nu_tur;
        HydroStepOptions opts;
        opts.uzawa.max_outer = 10000;  // cold start against a stiff eddy viscosity
        const HydroStepResult res = solve_velocity_step(
            m, dm, v0, theta, {2.0e-3, 2.0e-3, 2.0e-3, 2.0e-3}, params, 1800.0, opts);
        REQUIRE(res.report.converged);
        eps_norms[idx++] = sym_grad_l2(m, dm, res.v);
    }
    CHECK(eps_norms[1] <= eps_norms[0] * (1.0 + 1e-12));
}

TEST_CASE("Poiseuille through the step driver with Smagorinsky off") {
    const double W = 2.0, H = 1.0, U = 1.0, nu = 1.0e-2, dt = 1.0;
    const Mesh m = build_rect_mesh(W, H, 0.25, PumpLayout::none());
    const DofMap dm = make_dof_map(m);
    PhysicalParams params;
    params.nu = nu;
    params.nu_tur = 0.0;
    params.alpha0 = 0.0;

    auto poiseuille = [&](Vec2 p) { return Vec2{4.0 * U * p.y * (H - p.y) / (H * H), 0.0}; };
    const Vector v_exact = interpolate_velocity(dm, poiseuille);
    const Vector theta(dm.scalar_q2_count(), 283.0);

    PumpVelocityBC bc;
    for (const auto& [tag, dofs] : dm.tag_dofs)
        for (int d : dofs) {
            const Vec2 val = poiseuille(dm.q2_coords[d]);
            bc.values.emplace_back(2 * d, val.x);
            bc.values.emplace_back(2 * d + 1, val.y);
        }

    HydroStepOptions opts;
    opts.uzawa.tol_div = 1e-12;
    opts.uzawa.max_outer = 100000;
    opts.uzawa.cg_tol = 1e-14;
    const HydroStepper stepper(m, dm, params, opts);
    const HydroStepResult res = stepper.step(v_exact, {}, theta, theta, bc, dt);
    REQUIRE(res.report.converged);

    double vmax = 0.0, verr = 0.0;
    for (std::size_t i = 0; i < res.v.size(); ++i) {
        vmax = std::max(vmax, std::abs(v_exact[i]));
        verr = std::max(verr, std::abs(res.v[i] - v_exact[i]));
    }
    CHECK(verr / vmax <= 1e-8);
}
