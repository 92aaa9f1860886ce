#ifndef RECIRC_THERMAL_HPP
#define RECIRC_THERMAL_HPP

#include <vector>

#include "recirc/assembly.hpp"
#include "recirc/mesh.hpp"
#include "recirc/params.hpp"
#include "recirc/solvers.hpp"
#include "recirc/types.hpp"

namespace recirc {

/// Boundary-condition regime of one pump, a pure function of sign(g):
/// g > 0 turbinating, g < 0 pumping, g = 0 off.
enum class PumpMode { Turbinate, Pump, Off };

PumpMode pump_mode_from_rate(double g);

/// Compactly supported bump rho_eps(t) = (c/eps) exp(t^2/(t^2-eps^2)) on
/// |t| < eps, normalized to unit mass.
struct MollifierSpec {
    double epsilon = 1.0;
    double c = 0.0;
};

double mollifier_constant();
double mollifier_value(double t, double eps);
MollifierSpec make_mollifier(double eps);

/// Mean of the quadratic trace over a tagged boundary span.
double collector_mean(const Mesh& mesh, const DofMap& dm, const Vector& theta, BoundaryTag tag);

/// Sampled time series with constant extension on both ends; s <= first
/// sample returns the first value (the cold-start collector mean).
struct HistorySeries {
    std::vector<double> times;
    std::vector<double> values;
    double eval(double s) const;
};

/// Time-averaged collector mean seen by the injector: the convolution of the
/// history with rho_eps centered at t - eps (support (t-2eps, t)). Utility
/// for the continuous model; the discrete scheme uses its eps -> 0 limit.
double injector_trace_convolution(const HistorySeries& history, double t,
                                  const MollifierSpec& spec);

struct ThermalBcData {
    BoundaryData theta_N = BoundaryData::constant(283.0);
    BoundaryData theta_S = BoundaryData::constant(286.0);
    BoundaryData T_r = BoundaryData::constant(283.0);
};

struct ThermalStepReport {
    int picard_iterations = 0;
    bool converged = false;
    std::vector<double> iterate_changes;
    double constraint_residual = 0.0;  // max over active pumps of |mean_T - mean_C|
    int cg_iterations = 0;
};

struct ThermalStepOptions {
    double picard_tol = 1e-8;      // relative max-norm change
    int picard_max = 50;
    double constraint_tol = 1e-8;  // pump mean-coupling residual
    // tight inner tolerance: the coupling residual can only settle below
    // constraint_tol if the solver noise floor sits well under it
    double cg_tol = 1e-13;
};

/// One implicit temperature step. Reuses the mesh-fixed operators across
/// steps; the radiative lag and the nonlocal collector/injector Dirichlet
/// values are resolved in a single Picard loop.
class ThermalStepper {
  public:
    ThermalStepper(const Mesh& mesh, const DofMap& dm, const PhysicalParams& params,
                   ThermalStepOptions opts = {});

    /// theta^{n+1} from theta^n, the transporting velocity v^n and the pump
    /// regimes. With first_step the lateral/bottom Robin condition extends to
    /// the whole non-surface boundary and pump modes are ignored.
    std::pair<Vector, ThermalStepReport> step(const Vector& theta_prev, const Vector& velocity,
                                              const std::vector<PumpMode>& pump_modes,
                                              const ThermalBcData& bc, double dt,
                                              bool first_step) const;

    /// One Picard iterate's linear system: step-fixed operator plus the
    /// radiative lag, nonlocal Dirichlet constraints already folded in
    /// (identity rows, substituted right-hand side).
    ThermalSystem assemble_system(const Vector& theta_lag, const Vector& theta_prev,
                                  const Vector& velocity,
                                  const std::vector<PumpMode>& pump_modes,
                                  const ThermalBcData& bc, double dt, bool first_step) const;

    /// The assembled linear system of the final Picard iterate (exposed for
    /// inspection in tests).
    const Mesh& mesh() const { return mesh_; }

  private:
    struct BaseBuilder;

    const Mesh& mesh_;
    const DofMap& dm_;
    PhysicalParams params_;
    ThermalStepOptions opts_;
    SparseMatrix mass_;
    SparseMatrix stiffness_;  // scaled by K
};

/// Convenience wrapper building a one-shot stepper.
std::pair<Vector, ThermalStepReport> solve_temperature_step(
    const Mesh& mesh, const DofMap& dm, const Vector& theta_prev, const Vector& velocity,
    const std::vector<PumpMode>& pump_modes, const ThermalBcData& bc, const PhysicalParams& params,
    double dt, bool first_step, const ThermalStepOptions& opts = {});

}  // namespace recirc

#endif
