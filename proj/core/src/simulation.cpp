#include "recirc/simulation.hpp"

#include <algorithm>
#include <cmath>

#include "recirc/assembly.hpp"
#include "recirc/fe.hpp"
#include "recirc/linalg.hpp"
#include "recirc/quadrature.hpp"

namespace recirc {

std::vector<double> PumpSchedule::rates_at(int n) const {
    std::vector<double> r(n_pumps);
    for (int k = 0; k < n_pumps; ++k) r[k] = rate(k, n);
    return r;
}

void PumpSchedule::validate(double bound) const {
    if (static_cast<int>(g.size()) != n_pumps * steps)
        throw config_error("schedule: rate matrix size mismatch");
    for (double gi : g) {
        if (!std::isfinite(gi)) throw config_error("schedule: non-finite rate");
        if (std::abs(gi) > bound)
            throw config_error("schedule: rate " + std::to_string(gi) + " exceeds bound " +
                               std::to_string(bound));
    }
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"NNNN", "TTTT", "PPPP", "TPTP", "PTPT"};
    return names;
}

PumpSchedule preset_rates(const std::string& name, int n_pumps, int steps, double dt) {
    const double on = 2.0e-3;
    std::vector<double> per_pump(n_pumps, 0.0);
    if (name == "NNNN") {
        // all off
    } else if (name == "TTTT") {
        std::fill(per_pump.begin(), per_pump.end(), on);
    } else if (name == "PPPP") {
        std::fill(per_pump.begin(), per_pump.end(), -on);
    } else if (name == "TPTP") {
        for (int k = 0; k < n_pumps; ++k) per_pump[k] = (k % 2 == 0) ? on : -on;
    } else if (name == "PTPT") {
        for (int k = 0; k < n_pumps; ++k) per_pump[k] = (k % 2 == 0) ? -on : on;
    } else {
        throw param_error("unknown scenario preset: " + name);
    }
    PumpSchedule s;
    s.n_pumps = n_pumps;
    s.steps = steps;
    s.dt = dt;
    s.g.resize(static_cast<std::size_t>(n_pumps) * steps);
    for (int k = 0; k < n_pumps; ++k)
        for (int n = 0; n < steps; ++n) s.g[static_cast<std::size_t>(k) * steps + n] = per_pump[k];
    return s;
}

PumpSchedule scenario_preset(const std::string& name) { return preset_rates(name, 4, 96, 1800.0); }

namespace {

std::array<int, 6> local_dofs(const Mesh& mesh, int t) {
    const auto& tr = mesh.triangles[t];
    const auto& te = mesh.triangle_edges[t];
    const int nv = mesh.vertex_count();
    return {tr[0], tr[1], tr[2], nv + te[0], nv + te[1], nv + te[2]};
}

/// Clip a triangle against the half-plane y >= y0 (Sutherland-Hodgman).
std::vector<Vec2> clip_halfplane(const std::array<Vec2, 3>& tri, double y0) {
    std::vector<Vec2> poly(tri.begin(), tri.end());
    std::vector<Vec2> out;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2 a = poly[i];
        const Vec2 b = poly[(i + 1) % poly.size()];
        const bool ain = a.y >= y0, bin = b.y >= y0;
        if (ain) out.push_back(a);
        if (ain != bin) {
            const double s = (y0 - a.y) / (b.y - a.y);
            out.push_back({a.x + s * (b.x - a.x), y0});
        }
    }
    return out;
}

}  // namespace

double mean_upper_layer_temperature(const Mesh& mesh, const DofMap& dm, const Vector& theta,
                                    double depth) {
    (void)dm;
    if (depth <= 0.0 || depth > mesh.height)
        throw param_error("mean_upper_layer_temperature: depth out of range");
    const double y0 = mesh.height - depth;
    const auto& rule = triangle_rule_d5();

    double integral = 0.0, area = 0.0;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const auto& tr = mesh.triangles[t];
        const std::array<Vec2, 3> pts = {mesh.vertices[tr[0]], mesh.vertices[tr[1]],
                                         mesh.vertices[tr[2]]};
        const auto poly = clip_halfplane(pts, y0);
        if (poly.size() < 3) continue;
        const auto ld = local_dofs(mesh, t);
        for (std::size_t f = 1; f + 1 < poly.size(); ++f) {
            const Vec2 a = poly[0], b = poly[f], c = poly[f + 1];
            const double sub_area = 0.5 * cross(b - a, c - a);
            if (sub_area <= 0.0) continue;
            for (std::size_t q = 0; q < rule.points.size(); ++q) {
                const auto& l = rule.points[q];
                const Vec2 p = l[0] * a + l[1] * b + l[2] * c;
                const auto pl = mesh.point_to_barycentric(t, p);
                const auto bv = p2_values(pl);
                double v = 0.0;
                for (int i = 0; i < 6; ++i) v += theta[ld[i]] * bv[i];
                integral += rule.weights[q] * sub_area * v;
                area += rule.weights[q] * sub_area;
            }
        }
    }
    return integral / area;
}

void EnergyMonitor::update(const Mesh& mesh, const DofMap& dm, const Vector& theta, double dt) {
    const double l2 = scalar_l2(mesh, dm, theta);
    l2_sq = l2 * l2;
    grad_accum += dt * grad_l2_sq(mesh, dm, theta);
    boundary_l5_accum += dt * boundary_lp_integral(mesh, dm, theta, {BoundaryTag::S, -1}, 5.0);
}

ScenarioResult run_simulation(const RunConfig& cfg, const SnapshotCallback& on_snapshot) {
    const PumpLayout layout = cfg.effective_layout();
    const Mesh mesh = build_rect_mesh(cfg.domain.width, cfg.domain.height, cfg.domain.h, layout);
    const DofMap dm = make_dof_map(mesh);
    const PhysicalParams params = cfg.physical_params();
    const int N = cfg.time.steps;
    const double dt = cfg.time.dt;
    const int n_pumps = layout.pump_count();

    PumpSchedule schedule;
    if (!cfg.schedule.rows.empty()) {
        schedule.n_pumps = static_cast<int>(cfg.schedule.rows.size());
        schedule.steps = N;
        schedule.dt = dt;
        for (const auto& row : cfg.schedule.rows)
            schedule.g.insert(schedule.g.end(), row.begin(), row.end());
    } else {
        schedule = preset_rates(cfg.schedule.preset, n_pumps, N, dt);
    }
    if (schedule.n_pumps != n_pumps)
        throw config_error("schedule: row count does not match the layout pump count");
    if (N > 0) schedule.validate(params.pump_bound);

    ThermalStepOptions topts;
    topts.picard_tol = cfg.solver.picard_tol;
    topts.picard_max = cfg.solver.picard_max;
    topts.constraint_tol = cfg.solver.constraint_tol;
    topts.cg_tol = cfg.solver.thermal_cg_tol;
    HydroStepOptions hopts;
    hopts.picard_tol = cfg.solver.hydro_picard_tol;
    hopts.picard_max = cfg.solver.hydro_picard_max;
    hopts.uzawa.tol_div = cfg.solver.uzawa_tol;
    hopts.uzawa.max_outer = cfg.solver.uzawa_max;
    hopts.uzawa.step = cfg.solver.uzawa_step;
    hopts.uzawa.cg_tol = cfg.solver.cg_tol;

    const ThermalStepper thermal(mesh, dm, params, topts);
    const HydroStepper hydro(mesh, dm, params, hopts);

    Vector theta(dm.scalar_q2_count(), params.theta0);
    Vector v(dm.vector_q2_count(), 0.0);
    Vector p(dm.scalar_q1_count(), 0.0);

    ScenarioResult result;
    EnergyMonitor monitor;

    auto bc_at = [&](double t_next) {
        ThermalBcData bc;
        bc.theta_N = BoundaryData::constant(params.theta_N);
        bc.theta_S = BoundaryData::constant(params.theta_S);
        bc.T_r = BoundaryData::constant(cfg.radiation_temperature(t_next));
        return bc;
    };

    auto record = [&](int step, const ThermalStepReport* trep, const HydroStepReport* hrep,
                      double div_norm) {
        StepDiagnostics d;
        d.step = step;
        d.time_s = step * dt;
        d.mean_upper_K = mean_upper_layer_temperature(mesh, dm, theta,
                                                      std::min(1.5, mesh.height));
        const auto [mn, mx] = std::minmax_element(theta.begin(), theta.end());
        d.theta_min_K = *mn;
        d.theta_max_K = *mx;
        d.theta_l2 = scalar_l2(mesh, dm, theta);
        d.div_v_l2 = div_norm;
        d.picard_iters = trep ? trep->picard_iterations : 0;
        d.uzawa_iters = hrep ? hrep->uzawa_iterations : 0;
        d.energy1 = monitor.l2_sq;
        d.energy2 = monitor.grad_accum;
        d.energy3 = monitor.boundary_l5_accum;
        d.constraint_residual = trep ? trep->constraint_residual : 0.0;
        d.v_l2 = norm2(v);
        result.rows.push_back(d);
    };

    auto snapshot = [&](int step) {
        if (on_snapshot && cfg.output.snapshot_every > 0 &&
            (step % cfg.output.snapshot_every == 0 || step == N + 1))
            on_snapshot(step, mesh, dm, theta, v, p);
    };

    monitor.l2_sq = std::pow(scalar_l2(mesh, dm, theta), 2);
    record(0, nullptr, nullptr, 0.0);
    snapshot(0);

    if (N == 0) {
        result.theta_final = theta;
        result.v_final = v;
        result.p_final = p;
        return result;
    }

    const Vector theta0_field = theta;
    double last_div = 0.0;

    try {
        // theta^1: extended Robin boundary, transport by v^0
        auto [theta1, trep1] = thermal.step(theta, v, {}, bc_at(dt), dt, true);
        theta = std::move(theta1);
        monitor.update(mesh, dm, theta, dt);

        // v^1 from g^1 and theta^1
        const PumpVelocityBC bc1 =
            pump_boundary_velocity(mesh, dm, schedule.rates_at(1), params.pump_bound);
        HydroStepResult h1 = hydro.step(v, p, theta, theta0_field, bc1, dt);
        v = std::move(h1.v);
        p = std::move(h1.p);
        last_div = h1.report.div_norm;
        record(1, &trep1, &h1.report, last_div);
        snapshot(1);

        for (int n = 1; n <= N - 1; ++n) {
            std::vector<PumpMode> modes(n_pumps);
            for (int k = 0; k < n_pumps; ++k) modes[k] = pump_mode_from_rate(schedule.rate(k, n));
            auto [theta_next, trep] =
                thermal.step(theta, v, modes, bc_at((n + 1) * dt), dt, false);
            theta = std::move(theta_next);
            monitor.update(mesh, dm, theta, dt);

            const PumpVelocityBC bc =
                pump_boundary_velocity(mesh, dm, schedule.rates_at(n + 1), params.pump_bound);
            HydroStepResult h = hydro.step(v, p, theta, theta0_field, bc, dt);
            v = std::move(h.v);
            p = std::move(h.p);
            last_div = h.report.div_norm;
            record(n + 1, &trep, &h.report, last_div);
            snapshot(n + 1);
        }

        // trailing temperature step theta^{N+1}, reported but never used
        std::vector<PumpMode> modes(n_pumps);
        for (int k = 0; k < n_pumps; ++k) modes[k] = pump_mode_from_rate(schedule.rate(k, N));
        auto [theta_last, trep_last] =
            thermal.step(theta, v, modes, bc_at((N + 1) * dt), dt, false);
        theta = std::move(theta_last);
        monitor.update(mesh, dm, theta, dt);
        record(N + 1, &trep_last, nullptr, last_div);
        snapshot(N + 1);
    } catch (const std::exception& e) {
        result.completed = false;
        result.failed_step = static_cast<int>(result.rows.size());
        result.failure = e.what();
    }

    result.theta_final = theta;
    result.v_final = v;
    result.p_final = p;
    return result;
}

}  // namespace recirc
