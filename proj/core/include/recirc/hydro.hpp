#ifndef RECIRC_HYDRO_HPP
#define RECIRC_HYDRO_HPP

#include <utility>
#include <vector>

#include "recirc/assembly.hpp"
#include "recirc/mesh.hpp"
#include "recirc/params.hpp"
#include "recirc/solvers.hpp"
#include "recirc/types.hpp"

namespace recirc {

/// Dirichlet velocity data on the whole boundary: normal-directed pump values
/// on the collector/injector spans, zero elsewhere. Values are per velocity
/// dof (interleaved).
struct PumpVelocityBC {
    std::vector<std::pair<int, double>> values;
};

/// v = -(g/mu(T^k)) n on injector spans and +(g/mu(C^k)) n on collector
/// spans; shared junction nodes take the first pump's value in pair order.
PumpVelocityBC pump_boundary_velocity(const Mesh& mesh, const DofMap& dm,
                                      const std::vector<double>& g_now, double pump_bound);

struct HydroStepReport {
    int picard_iterations = 0;
    bool converged = false;
    int uzawa_iterations = 0;  // total outer iterations over all Picard iterates
    double div_norm = 0.0;
    std::vector<double> iterate_changes;
};

struct HydroStepOptions {
    double picard_tol = 1e-6;  // relative velocity max-norm change
    int picard_max = 30;
    UzawaOptions uzawa;
};

struct HydroStepResult {
    Vector v;
    Vector p;
    HydroStepReport report;
};

/// One velocity/pressure step: outer Picard on the Smagorinsky weight, inner
/// Uzawa solve per iterate. theta_next is the already-computed temperature
/// driving the buoyancy load.
class HydroStepper {
  public:
    HydroStepper(const Mesh& mesh, const DofMap& dm, const PhysicalParams& params,
                 HydroStepOptions opts = {});

    HydroStepResult step(const Vector& v_prev, const Vector& p_prev, const Vector& theta_next,
                         const Vector& theta0, const PumpVelocityBC& bc, double dt) const;

  private:
    const Mesh& mesh_;
    const DofMap& dm_;
    PhysicalParams params_;
    HydroStepOptions opts_;
};

/// Convenience wrapper: builds the pump BC from rates and runs one step.
HydroStepResult solve_velocity_step(const Mesh& mesh, const DofMap& dm, const Vector& v_prev,
                                    const Vector& theta_next, const std::vector<double>& g_now,
                                    const PhysicalParams& params, double dt,
                                    const HydroStepOptions& opts = {});

}  // namespace recirc

#endif
