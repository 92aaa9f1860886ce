#include "verification.hpp"

#include <cmath>
#include <vector>

#include "recirc/assembly.hpp"
#include "recirc/fe.hpp"
#include "recirc/hydro.hpp"
#include "recirc/linalg.hpp"
#include "recirc/quadrature.hpp"
#include "recirc/simulation.hpp"
#include "recirc/thermal.hpp"

namespace recirc::tools {

namespace {

double l2_error(const Mesh& mesh, const Vector& field,
                const std::function<double(Vec2)>& exact) {
    const auto& rule = triangle_rule_d5();
    const int nv = mesh.vertex_count();
    double total = 0.0;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const auto& tr = mesh.triangles[t];
        const auto& te = mesh.triangle_edges[t];
        const std::array<int, 6> ld = {tr[0], tr[1], tr[2], nv + te[0], nv + te[1], nv + te[2]};
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const auto bv = p2_values(rule.points[q]);
            double v = 0.0;
            for (int i = 0; i < 6; ++i) v += field[ld[i]] * bv[i];
            const Vec2 p = mesh.barycentric_to_point(t, rule.points[q]);
            const double d = v - exact(p);
            total += rule.weights[q] * mesh.triangle_area(t) * d * d;
        }
    }
    return std::sqrt(total);
}

bool check_equilibrium() {
    RunConfig cfg;
    cfg.domain = {2.0, 1.0, 0.25};
    cfg.time = {100.0, 3};
    cfg.physics.b2S = 0.0;
    cfg.physics.theta_S = 283.0;
    cfg.physics.theta_N = 283.0;
    const ScenarioResult res = run_simulation(cfg);
    if (!res.completed) return false;
    for (const auto& d : res.rows)
        if (std::abs(d.theta_min_K - 283.0) > 1e-9 || std::abs(d.theta_max_K - 283.0) > 1e-9)
            return false;
    return norm_inf(res.v_final) <= 1e-12;
}

bool check_mollifier() {
    // composite Simpson, independent of the library quadrature
    const int n = 200001;
    double acc = 0.0;
    const double h = 2.0 / (n - 1);
    auto bump = [](double t) {
        return std::abs(t) < 1.0 ? std::exp(t * t / (t * t - 1.0)) : 0.0;
    };
    for (int i = 0; i < n; ++i) {
        const double t = -1.0 + i * h;
        const double w = (i == 0 || i == n - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * bump(t);
    }
    acc *= h / 3.0;
    return std::abs(mollifier_constant() - 1.0 / acc) <= 1e-10;
}

bool check_poiseuille() {
    const double W = 2.0, H = 1.0, U = 1.0;
    const Mesh m = build_rect_mesh(W, H, 0.25, PumpLayout::none());
    const DofMap dm = make_dof_map(m);
    PhysicalParams params;
    params.nu = 1.0e-2;
    params.nu_tur = 0.0;
    params.alpha0 = 0.0;
    auto exact = [&](Vec2 p) { return Vec2{4.0 * U * p.y * (H - p.y) / (H * H), 0.0}; };
    const Vector v_exact = interpolate_velocity(dm, exact);
    const Vector theta(dm.scalar_q2_count(), 283.0);

    PumpVelocityBC bc;
    for (const auto& [tag, dofs] : dm.tag_dofs)
        for (int d : dofs) {
            const Vec2 val = exact(dm.q2_coords[d]);
            bc.values.emplace_back(2 * d, val.x);
            bc.values.emplace_back(2 * d + 1, val.y);
        }
    HydroStepOptions opts;
    opts.uzawa.tol_div = 1e-12;
    opts.uzawa.max_outer = 100000;
    opts.uzawa.cg_tol = 1e-14;
    const HydroStepper stepper(m, dm, params, opts);
    const HydroStepResult res = stepper.step(v_exact, {}, theta, theta, bc, 1.0);
    if (!res.report.converged) return false;
    double vmax = 0.0, verr = 0.0;
    for (std::size_t i = 0; i < res.v.size(); ++i) {
        vmax = std::max(vmax, std::abs(v_exact[i]));
        verr = std::max(verr, std::abs(res.v[i] - v_exact[i]));
    }
    return verr / vmax <= 1e-8;
}

bool check_manufactured_diffusion() {
    const double K = 1.0 / (2.0 * M_PI * M_PI);
    const double T = 0.05, dt = 5.0e-4;
    auto exact = [](double t, Vec2 p) {
        return std::exp(-t) * std::cos(M_PI * p.x) * std::cos(M_PI * p.y);
    };

    std::vector<double> errs;
    for (const double h : {0.25, 0.125}) {
        const Mesh m = build_rect_mesh(1.0, 1.0, h, PumpLayout::none());
        const DofMap dm = make_dof_map(m);
        PhysicalParams params;
        params.K = K;
        params.b1N = 1.0;
        params.b1S = 1.0;
        params.b2S = 0.0;
        const ThermalStepper stepper(m, dm, params);
        const Vector v(dm.vector_q2_count(), 0.0);
        Vector theta = interpolate_scalar(dm, [&](Vec2 p) { return exact(0.0, p); });

        const int steps = static_cast<int>(std::round(T / dt));
        for (int n = 0; n < steps; ++n) {
            const double tn1 = (n + 1) * dt;
            auto robin = [&, tn1](Vec2 p) {
                const double e = std::exp(-tn1);
                const double gx = -M_PI * e * std::sin(M_PI * p.x) * std::cos(M_PI * p.y);
                const double gy = -M_PI * e * std::cos(M_PI * p.x) * std::sin(M_PI * p.y);
                Vec2 n_out{0.0, 0.0};
                if (p.y < 1e-12) n_out = {0.0, -1.0};
                else if (p.y > 1.0 - 1e-12) n_out = {0.0, 1.0};
                else if (p.x < 1e-12) n_out = {-1.0, 0.0};
                else n_out = {1.0, 0.0};
                return exact(tn1, p) + K * (gx * n_out.x + gy * n_out.y);
            };
            ThermalBcData bc;
            bc.theta_N = BoundaryData::function(robin);
            bc.theta_S = BoundaryData::function(robin);
            bc.T_r = BoundaryData::constant(0.0);
            auto [next, rep] = stepper.step(theta, v, {}, bc, dt, n == 0);
            theta = std::move(next);
        }
        errs.push_back(l2_error(m, theta, [&](Vec2 p) { return exact(T, p); }));
    }
    const double order = std::log2(errs[0] / errs[1]);
    return order >= 2.5;
}

}  // namespace

bool run_verification(const std::function<void(const std::string&, bool)>& report) {
    bool all = true;
    const auto run = [&](const std::string& name, bool ok) {
        report(name, ok);
        all = all && ok;
    };
    run("equilibrium exactness", check_equilibrium());
    run("mollifier normalization", check_mollifier());
    run("Poiseuille recovery", check_poiseuille());
    run("manufactured diffusion order", check_manufactured_diffusion());
    return all;
}

}  // namespace recirc::tools
