#include "recirc/hydro.hpp"

#include <cmath>
#include <string>

#include "recirc/linalg.hpp"
#include "recirc/transport.hpp"

namespace recirc {

PumpVelocityBC pump_boundary_velocity(const Mesh& mesh, const DofMap& dm,
                                      const std::vector<double>& g_now, double pump_bound) {
    const int n_pumps = mesh.layout.pump_count();
    if (static_cast<int>(g_now.size()) != n_pumps)
        throw param_error("pump_boundary_velocity: rate count mismatch");
    for (double g : g_now) {
        if (!std::isfinite(g)) throw param_error("pump_boundary_velocity: non-finite rate");
        if (std::abs(g) > pump_bound)
            throw param_error("pump rate " + std::to_string(g) + " exceeds the bound " +
                              std::to_string(pump_bound));
    }

    std::vector<double> value_x(dm.scalar_q2_count(), 0.0), value_y(dm.scalar_q2_count(), 0.0);
    std::vector<char> assigned(dm.scalar_q2_count(), 0);

    auto assign_span = [&](BoundaryTag tag, Side side, double magnitude) {
        const Vec2 n = side_normal(side);
        for (int d : dm.tag_dofs.at(tag)) {
            if (assigned[d]) continue;  // junction with an earlier pump's span
            assigned[d] = 1;
            value_x[d] = magnitude * n.x;
            value_y[d] = magnitude * n.y;
        }
    };

    for (int k = 0; k < n_pumps; ++k) {
        const auto& pair = mesh.layout.pairs[k];
        const double muC = boundary_measure(mesh, {BoundaryTag::C, k});
        const double muT = boundary_measure(mesh, {BoundaryTag::T, k});
        assign_span({BoundaryTag::C, k}, pair.collector.side, g_now[k] / muC);
        assign_span({BoundaryTag::T, k}, pair.injector.side, -g_now[k] / muT);
    }

    // no-slip everywhere else on the boundary
    PumpVelocityBC bc;
    for (const auto& [tag, dofs] : dm.tag_dofs)
        for (int d : dofs) {
            if (assigned[d]) continue;
            assigned[d] = 2;  // mark to emit a single zero pair below
        }
    for (int d = 0; d < dm.scalar_q2_count(); ++d) {
        if (!assigned[d]) continue;
        bc.values.emplace_back(2 * d, value_x[d]);
        bc.values.emplace_back(2 * d + 1, value_y[d]);
    }
    return bc;
}

HydroStepper::HydroStepper(const Mesh& mesh, const DofMap& dm, const PhysicalParams& params,
                           HydroStepOptions opts)
    : mesh_(mesh), dm_(dm), params_(params), opts_(opts) {}

HydroStepResult HydroStepper::step(const Vector& v_prev, const Vector& p_prev,
                                   const Vector& theta_next, const Vector& theta0,
                                   const PumpVelocityBC& bc, double dt) const {
    if (static_cast<int>(v_prev.size()) != dm_.vector_q2_count())
        throw param_error("solve_velocity_step: velocity dof count mismatch");

    const Vector advected = advected_rhs_vector(mesh_, dm_, v_prev, v_prev, dt);

    HydroStepResult res;
    res.v = v_prev;  // Picard initial iterate
    res.p = p_prev.empty() ? Vector(dm_.scalar_q1_count(), 0.0) : p_prev;

    for (int it = 1; it <= opts_.picard_max; ++it) {
        HydroBlocks blocks =
            assemble_hydro_blocks(mesh_, dm_, params_, res.v, theta_next, theta0, advected, dt);
        blocks.dirichlet = bc.values;

        UzawaOptions uz = opts_.uzawa;
        uz.v0 = &res.v;
        uz.p0 = &res.p;
        UzawaResult ur = uzawa_solve(blocks, uz);
        if (!ur.report.converged)
            throw solver_error("solve_velocity_step: Uzawa did not converge (div " +
                               std::to_string(ur.report.residual) + " after " +
                               std::to_string(ur.report.iterations) + " outer iterations)");
        res.report.uzawa_iterations += ur.report.iterations;
        res.report.div_norm = ur.report.residual;

        const double change = max_abs_diff(ur.v, res.v);
        res.report.iterate_changes.push_back(change);
        res.report.picard_iterations = it;
        res.v = std::move(ur.v);
        res.p = std::move(ur.p);
        if (has_nan(res.v)) throw numerical_error("solve_velocity_step: NaN iterate");

        if (change <= opts_.picard_tol * (1.0 + norm_inf(res.v))) {
            res.report.converged = true;
            break;
        }
        if (params_.nu_tur == 0.0) {  // linear problem: one iterate suffices
            res.report.converged = true;
            break;
        }
    }
    if (!res.report.converged)
        throw solver_error("solve_velocity_step: Picard did not converge in " +
                           std::to_string(opts_.picard_max) + " iterations");
    return res;
}

HydroStepResult solve_velocity_step(const Mesh& mesh, const DofMap& dm, const Vector& v_prev,
                                    const Vector& theta_next, const std::vector<double>& g_now,
                                    const PhysicalParams& params, double dt,
                                    const HydroStepOptions& opts) {
    const PumpVelocityBC bc = pump_boundary_velocity(mesh, dm, g_now, params.pump_bound);
    HydroStepper stepper(mesh, dm, params, opts);
    const Vector theta0(dm.scalar_q2_count(), params.theta0);
    return stepper.step(v_prev, {}, theta_next, theta0, bc, dt);
}

}  // namespace recirc
