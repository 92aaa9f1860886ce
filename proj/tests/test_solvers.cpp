#include <doctest.h>

#include <cmath>

#include "recirc/assembly.hpp"
#include "recirc/linalg.hpp"
#include "recirc/solvers.hpp"
#include "recirc/transport.hpp"
#include "support/oracles.hpp"

using namespace recirc;

TEST_CASE("cg: identity, tiny system, zero rhs") {
    {
        TripletAccumulator acc(3, 3);
        for (int i = 0; i < 3; ++i) acc.add(i, i, 1.0);
        const SparseMatrix I = acc.compress(true);
        const Vector b = {1.0, -2.0, 0.5};
        auto [x, rep] = cg_solve(I, b);
        CHECK(rep.converged);
        CHECK(rep.iterations <= 1);
        CHECK(max_abs_diff(x, b) <= 1e-14);
    }
    {
        TripletAccumulator acc(2, 2);
        acc.add(0, 0, 4.0);
        acc.add(0, 1, 1.0);
        acc.add(1, 0, 1.0);
        acc.add(1, 1, 3.0);
        const SparseMatrix A = acc.compress(true);
        auto [x, rep] = cg_solve(A, {1.0, 2.0});
        CHECK(rep.converged);
        CHECK(x[0] == doctest::Approx(1.0 / 11.0).epsilon(1e-10));
        CHECK(x[1] == doctest::Approx(7.0 / 11.0).epsilon(1e-10));
    }
    {
        TripletAccumulator acc(2, 2);
        acc.add(0, 0, 2.0);
        acc.add(1, 1, 2.0);
        const SparseMatrix A = acc.compress(true);
        auto [x, rep] = cg_solve(A, {0.0, 0.0});
        CHECK(rep.converged);
        CHECK(rep.iterations == 0);
        CHECK(norm_inf(x) == 0.0);
    }
}

TEST_CASE("cg error is monotonically non-increasing in the A-norm") {
    // SPD system from the FEM operators
    const Mesh m = build_rect_mesh(1.0, 1.0, 0.25, PumpLayout::none());
    const DofMap dm = make_dof_map(m);
    SparseMatrix A = assemble_scalar_stiffness(m, dm, 1.0);
    A.add_scaled(1.0, assemble_scalar_mass(m, dm));

    oracle::Rng rng(42);
    Vector b(A.rows());
    for (double& bi : b) bi = rng.uniform(-1.0, 1.0);

    CgOptions tight;
    tight.tol = 1e-14;
    const Vector xstar = cg_solve(A, b, tight).first;

    double prev = 1e300;
    for (int k = 1; k <= 25; ++k) {
        CgOptions opts;
        opts.tol = 1e-300;  // force exactly k iterations
        opts.max_iter = k;
        const Vector xk = cg_solve(A, b, opts).first;
        Vector e(xk.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = xk[i] - xstar[i];
        const double anorm = std::sqrt(dot(e, A.multiply(e)));
        CHECK(anorm <= prev * (1.0 + 1e-12));
        prev = anorm;
    }
}

namespace {

HydroBlocks cavity_blocks(const Mesh& m, const DofMap& dm, double forcing_scale) {
    PhysicalParams params;
    params.nu = 1.0e-2;
    params.nu_tur = 0.0;
    params.alpha0 = forcing_scale;
    const int ns = dm.scalar_q2_count();
    const int nv = dm.vector_q2_count();
    const Vector theta0(ns, 0.0);
    const Vector theta = interpolate_scalar(dm, [](Vec2 p) {
        return std::sin(2.5 * p.x) * std::cos(1.5 * p.y) + 0.3 * p.x * p.y;
    });
    HydroBlocks blocks = assemble_hydro_blocks(m, dm, params, Vector(nv, 0.0), theta, theta0,
                                               Vector(nv, 0.0), 1.0);
    // homogeneous Dirichlet everywhere on the boundary
    std::vector<std::pair<int, double>> dirichlet;
    for (const auto& [tag, dofs] : dm.tag_dofs)
        for (int d : dofs) {
            dirichlet.emplace_back(2 * d, 0.0);
            dirichlet.emplace_back(2 * d + 1, 0.0);
        }
    blocks.dirichlet = dirichlet;
    return blocks;
}

}  // namespace

TEST_CASE("uzawa: zero data gives zero fields") {
    const Mesh m = build_rect_mesh(1.0, 1.0, 0.5, PumpLayout::none());
    const DofMap dm = make_dof_map(m);
    HydroBlocks blocks = cavity_blocks(m, dm, 0.0);
    const UzawaResult res = uzawa_solve(blocks);
    CHECK(res.report.converged);
    CHECK(norm_inf(res.v) == 0.0);
    CHECK(norm_inf(res.p) == 0.0);
}

TEST_CASE("uzawa matches the dense monolithic saddle solve on a tiny mesh") {
    const Mesh m = build_rect_mesh(2.0, 1.0, 0.5, PumpLayout::none());
    const DofMap dm = make_dof_map(m);
    HydroBlocks blocks = cavity_blocks(m, dm, 0.05);

    UzawaOptions opts;
    opts.tol_div = 1e-12;
    opts.max_outer = 50000;
    opts.cg_tol = 1e-13;
    const UzawaResult res = uzawa_solve(blocks, opts);
    REQUIRE(res.report.converged);

    const auto dense = oracle::dense_saddle_solve(blocks);
    for (std::size_t i = 0; i < res.v.size(); ++i)
        CHECK(std::abs(res.v[i] - dense.v[i]) <= 1e-6);
    for (std::size_t i = 0; i < res.p.size(); ++i)
        CHECK(std::abs(res.p[i] - dense.p[i]) <= 1e-6);

    // pressure gauge
    CHECK(std::abs(dot(blocks.pressure_weights, res.p)) / blocks.area <= 1e-12);
}

TEST_CASE("uzawa divergence history decreases and meets the bound") {
    const Mesh m = build_rect_mesh(2.0, 1.0, 0.25, PumpLayout::none());
    const DofMap dm = make_dof_map(m);
    HydroBlocks blocks = cavity_blocks(m, dm, 0.5);
    UzawaOptions opts;
    opts.tol_div = 1e-8;
    opts.max_outer = 20000;
    const UzawaResult res = uzawa_solve(blocks, opts);
    REQUIRE(res.report.converged);
    CHECK(res.report.residual <= opts.tol_div * (1.0 + norm2(res.v)));

    // loosely monotone tail: allow transient wiggle, require decay
    const auto& h = res.div_history;
    REQUIRE(h.size() >= 3);
    for (std::size_t i = 2; i + 1 < h.size(); ++i) CHECK(h[i + 1] <= h[i] * (1.0 + 1e-9));
}

TEST_CASE("Poiseuille flow is recovered exactly in the quadratic space") {
    const double W = 2.0, H = 1.0, U = 1.0, nu = 1.0e-2, dt = 1.0;
    const Mesh m = build_rect_mesh(W, H, 0.25, PumpLayout::none());
    const DofMap dm = make_dof_map(m);
    PhysicalParams params;
    params.nu = nu;
    params.nu_tur = 0.0;
    params.alpha0 = 0.0;

    auto poiseuille = [&](Vec2 p) { return Vec2{4.0 * U * p.y * (H - p.y) / (H * H), 0.0}; };
    const Vector v_exact = interpolate_velocity(dm, poiseuille);
    const Vector theta0(dm.scalar_q2_count(), 283.0);

    // steady state: the advected momentum of the exact profile feeds back
    const Vector adv = advected_rhs_vector(m, dm, v_exact, v_exact, dt);
    HydroBlocks blocks = assemble_hydro_blocks(m, dm, params, v_exact, theta0, theta0, adv, dt);
    for (const auto& [tag, dofs] : dm.tag_dofs)
        for (int d : dofs) {
            const Vec2 val = poiseuille(dm.q2_coords[d]);
            blocks.dirichlet.emplace_back(2 * d, val.x);
            blocks.dirichlet.emplace_back(2 * d + 1, val.y);
        }

    UzawaOptions opts;
    opts.tol_div = 1e-12;
    opts.max_outer = 100000;
    opts.cg_tol = 1e-14;
    const UzawaResult res = uzawa_solve(blocks, opts);
    REQUIRE(res.report.converged);

    double vmax = 0.0, verr = 0.0;
    for (std::size_t i = 0; i < res.v.size(); ++i) {
        vmax = std::max(vmax, std::abs(v_exact[i]));
        verr = std::max(verr, std::abs(res.v[i] - v_exact[i]));
    }
    CHECK(verr / vmax <= 1e-8);

    // exact pressure is linear: p = -8 nu U / H^2 x + const (mean zero)
    const double slope = -8.0 * nu * U / (H * H);
    for (int i = 0; i < dm.scalar_q1_count(); ++i) {
        const double expected = slope * (m.vertices[i].x - W / 2.0);
        CHECK(std::abs(res.p[i] - expected) <= 1e-7);
    }
}
