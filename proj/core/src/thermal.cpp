#include "recirc/thermal.hpp"

#include <algorithm>
#include <cmath>

#include "recirc/fe.hpp"
#include "recirc/linalg.hpp"
#include "recirc/quadrature.hpp"
#include "recirc/transport.hpp"

namespace recirc {

PumpMode pump_mode_from_rate(double g) {
    if (g > 0.0) return PumpMode::Turbinate;
    if (g < 0.0) return PumpMode::Pump;
    return PumpMode::Off;
}

namespace {

double bump(double t) {  // exp(t^2/(t^2-1)) on |t|<1
    if (std::abs(t) >= 1.0) return 0.0;
    return std::exp(t * t / (t * t - 1.0));
}

}  // namespace

double mollifier_constant() {
    // unit-mass normalization, computed once by composite Gauss quadrature
    static const double c = [] {
        const LineRule rule = gauss_legendre_01(32);
        const int panels = 64;
        double integral = 0.0;
        for (int p = 0; p < panels; ++p) {
            const double a = -1.0 + 2.0 * p / panels;
            const double w = 2.0 / panels;
            for (std::size_t q = 0; q < rule.points.size(); ++q)
                integral += w * rule.weights[q] * bump(a + w * rule.points[q]);
        }
        return 1.0 / integral;
    }();
    return c;
}

double mollifier_value(double t, double eps) {
    if (eps <= 0.0) throw param_error("mollifier_value: eps must be positive");
    return mollifier_constant() / eps * bump(t / eps);
}

MollifierSpec make_mollifier(double eps) {
    if (eps <= 0.0) throw param_error("make_mollifier: eps must be positive");
    return {eps, mollifier_constant()};
}

double collector_mean(const Mesh& mesh, const DofMap& dm, const Vector& theta, BoundaryTag tag) {
    (void)dm;
    const auto& rule = edge_rule();
    double integral = 0.0, measure = 0.0;
    bool found = false;
    for (const auto& be : mesh.boundary_edges) {
        if (!(be.tag == tag)) continue;
        found = true;
        const double len = norm(mesh.vertices[be.b] - mesh.vertices[be.a]);
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const auto tr = edge_p2_values(rule.points[q]);
            const double v =
                theta[be.a] * tr[0] + theta[be.b] * tr[1] + theta[be.mid_dof] * tr[2];
            integral += rule.weights[q] * len * v;
            measure += rule.weights[q] * len;
        }
    }
    if (!found) throw param_error("collector_mean: no edges tagged " + tag_name(tag));
    return integral / measure;
}

double HistorySeries::eval(double s) const {
    if (times.empty()) throw param_error("HistorySeries: empty");
    if (s <= times.front()) return values.front();
    if (s >= times.back()) return values.back();
    const auto it = std::upper_bound(times.begin(), times.end(), s);
    const std::size_t i = it - times.begin();
    const double t0 = times[i - 1], t1 = times[i];
    const double a = (s - t0) / (t1 - t0);
    return (1.0 - a) * values[i - 1] + a * values[i];
}

double injector_trace_convolution(const HistorySeries& history, double t,
                                  const MollifierSpec& spec) {
    const double eps = spec.epsilon;
    const double lo = t - 2.0 * eps, hi = t;
    static const LineRule rule = gauss_legendre_01(8);
    const int panels = 64;
    double integral = 0.0;
    const double w = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        const double a = lo + p * w;
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const double s = a + w * rule.points[q];
            integral += w * rule.weights[q] * mollifier_value(t - eps - s, eps) * history.eval(s);
        }
    }
    return integral;
}

ThermalStepper::ThermalStepper(const Mesh& mesh, const DofMap& dm, const PhysicalParams& params,
                               ThermalStepOptions opts)
    : mesh_(mesh), dm_(dm), params_(params), opts_(opts) {
    mass_ = assemble_scalar_mass(mesh_, dm_);
    stiffness_ = assemble_scalar_stiffness(mesh_, dm_, params_.K);
}

namespace {

struct Coupling {
    BoundaryTag target, source;  // constrained span <- mean over paired span
};

struct StepOperator {
    SparseMatrix base;  // mass/dt + diffusion + Robin boundary terms
    Vector rhs_base;    // advected load + Robin data loads
    std::vector<Coupling> couplings;
};

}  // namespace

struct ThermalStepper::BaseBuilder {
    static StepOperator build(const ThermalStepper& s, const Vector& theta_prev,
                              const Vector& velocity, const std::vector<PumpMode>& pump_modes,
                              const ThermalBcData& bc, double dt, bool first_step) {
        const int n = s.dm_.scalar_q2_count();
        if (static_cast<int>(theta_prev.size()) != n)
            throw param_error("solve_temperature_step: theta dof count mismatch");
        const int n_pumps = s.mesh_.layout.pump_count();
        if (!first_step && static_cast<int>(pump_modes.size()) != n_pumps)
            throw param_error("solve_temperature_step: pump mode count mismatch");
        const double alpha = 1.0 / dt;

        // Robin tags: Gamma_N, extended to the whole non-surface boundary on
        // the first step (pump spans have no influence yet)
        std::vector<BoundaryTag> robin_n_tags{{BoundaryTag::N, -1}};
        if (first_step) {
            for (int k = 0; k < n_pumps; ++k) {
                robin_n_tags.push_back({BoundaryTag::C, k});
                robin_n_tags.push_back({BoundaryTag::T, k});
            }
        }

        StepOperator op;
        op.base = s.stiffness_;
        {
            SparseMatrix scaled_mass = s.mass_;
            for (double& v : scaled_mass.values()) v *= alpha;
            op.base.add_scaled(1.0, scaled_mass);
        }
        auto [mass_n, load_n] =
            assemble_boundary_terms(s.mesh_, s.dm_, robin_n_tags, s.params_.b1N, bc.theta_N);
        auto [mass_s, load_s] = assemble_boundary_terms(s.mesh_, s.dm_, {{BoundaryTag::S, -1}},
                                                        s.params_.b1S, bc.theta_S);
        op.base.add_scaled(1.0, mass_n);
        op.base.add_scaled(1.0, mass_s);

        op.rhs_base = advected_rhs(s.mesh_, s.dm_, theta_prev, velocity, dt);
        axpy(1.0, load_n, op.rhs_base);
        axpy(1.0, load_s, op.rhs_base);

        if (!first_step) {
            for (int k = 0; k < n_pumps; ++k) {
                if (pump_modes[k] == PumpMode::Turbinate)
                    op.couplings.push_back({{BoundaryTag::T, k}, {BoundaryTag::C, k}});
                else if (pump_modes[k] == PumpMode::Pump)
                    op.couplings.push_back({{BoundaryTag::C, k}, {BoundaryTag::T, k}});
            }
        }
        return op;
    }

    static ThermalSystem iterate_system(const ThermalStepper& s, const StepOperator& op,
                                        const Vector& theta_lag, const ThermalBcData& bc) {
        ThermalSystem sys;
        sys.matrix = op.base;
        sys.rhs = op.rhs_base;
        if (s.params_.b2S != 0.0) {
            auto [rad_m, rad_l] = assemble_radiative(s.mesh_, s.dm_, s.params_.b2S, theta_lag, bc.T_r);
            sys.matrix.add_scaled(1.0, rad_m);
            axpy(1.0, rad_l, sys.rhs);
        }
        for (const auto& cp : op.couplings) {
            const double value = collector_mean(s.mesh_, s.dm_, theta_lag, cp.source);
            for (int d : s.dm_.tag_dofs.at(cp.target)) sys.constrained_dofs.emplace_back(d, value);
        }
        apply_dirichlet(sys.matrix, sys.rhs, sys.constrained_dofs, true);
        return sys;
    }
};

ThermalSystem ThermalStepper::assemble_system(const Vector& theta_lag, const Vector& theta_prev,
                                              const Vector& velocity,
                                              const std::vector<PumpMode>& pump_modes,
                                              const ThermalBcData& bc, double dt,
                                              bool first_step) const {
    const StepOperator op =
        BaseBuilder::build(*this, theta_prev, velocity, pump_modes, bc, dt, first_step);
    return BaseBuilder::iterate_system(*this, op, theta_lag, bc);
}

std::pair<Vector, ThermalStepReport> ThermalStepper::step(const Vector& theta_prev,
                                                          const Vector& velocity,
                                                          const std::vector<PumpMode>& pump_modes,
                                                          const ThermalBcData& bc, double dt,
                                                          bool first_step) const {
    const StepOperator op =
        BaseBuilder::build(*this, theta_prev, velocity, pump_modes, bc, dt, first_step);

    ThermalStepReport rep;
    Vector theta = theta_prev;  // warm start
    const bool has_radiative = params_.b2S != 0.0;
    const auto& couplings = op.couplings;

    for (int it = 1; it <= opts_.picard_max; ++it) {
        const ThermalSystem sys = BaseBuilder::iterate_system(*this, op, theta, bc);

        CgOptions cg;
        cg.tol = opts_.cg_tol;
        cg.x0 = &theta;
        auto [theta_new, crep] = cg_solve(sys.matrix, sys.rhs, cg);
        if (!crep.converged)
            throw solver_error("solve_temperature_step: CG failed (residual " +
                               std::to_string(crep.residual) + ")");
        rep.cg_iterations += crep.iterations;
        if (has_nan(theta_new)) throw numerical_error("solve_temperature_step: NaN iterate");

        const double change = max_abs_diff(theta_new, theta);
        rep.iterate_changes.push_back(change);
        rep.picard_iterations = it;
        theta = std::move(theta_new);

        double cres = 0.0;
        for (const auto& cp : couplings)
            cres = std::max(cres, std::abs(collector_mean(mesh_, dm_, theta, cp.target) -
                                           collector_mean(mesh_, dm_, theta, cp.source)));
        rep.constraint_residual = cres;

        const bool nonlinear = has_radiative || !couplings.empty();
        if (change <= opts_.picard_tol * (1.0 + norm_inf(theta)) &&
            cres <= opts_.constraint_tol) {
            rep.converged = true;
            break;
        }
        if (!nonlinear) {  // linear problem: the first solve is exact
            rep.converged = true;
            break;
        }
    }
    if (!rep.converged)
        throw solver_error("solve_temperature_step: Picard did not converge in " +
                           std::to_string(opts_.picard_max) + " iterations (last change " +
                           std::to_string(rep.iterate_changes.back()) + ")");
    return {std::move(theta), rep};
}

std::pair<Vector, ThermalStepReport> solve_temperature_step(
    const Mesh& mesh, const DofMap& dm, const Vector& theta_prev, const Vector& velocity,
    const std::vector<PumpMode>& pump_modes, const ThermalBcData& bc, const PhysicalParams& params,
    double dt, bool first_step, const ThermalStepOptions& opts) {
    ThermalStepper stepper(mesh, dm, params, opts);
    return stepper.step(theta_prev, velocity, pump_modes, bc, dt, first_step);
}

}  // namespace recirc
