#ifndef RECIRC_ASSEMBLY_HPP
#define RECIRC_ASSEMBLY_HPP

#include <functional>
#include <utility>
#include <vector>

#include "recirc/mesh.hpp"
#include "recirc/params.hpp"
#include "recirc/sparse.hpp"
#include "recirc/types.hpp"

namespace recirc {

/// Boundary data for Robin loads: a constant, a quadratic dof field
/// (evaluated through its trace), or a spatial function sampled at edge
/// quadrature points.
class BoundaryData {
  public:
    static BoundaryData constant(double c) {
        BoundaryData d;
        d.kind_ = Kind::Constant;
        d.c_ = c;
        return d;
    }
    static BoundaryData dofs(Vector v) {
        BoundaryData d;
        d.kind_ = Kind::Dofs;
        d.dofs_ = std::move(v);
        return d;
    }
    static BoundaryData function(std::function<double(Vec2)> f) {
        BoundaryData d;
        d.kind_ = Kind::Function;
        d.fn_ = std::move(f);
        return d;
    }

    /// Value at edge parameter s with trace dofs (a, b, mid) and position p.
    double eval(double s, int a, int b, int mid, Vec2 p) const;

  private:
    enum class Kind { Constant, Dofs, Function } kind_ = Kind::Constant;
    double c_ = 0.0;
    Vector dofs_;
    std::function<double(Vec2)> fn_;
};

/// Linear system of one implicit temperature step, after boundary terms and
/// constraints have been folded in.
struct ThermalSystem {
    SparseMatrix matrix;
    Vector rhs;
    std::vector<std::pair<int, double>> constrained_dofs;
};

/// Blocks of the discrete velocity/pressure problem. A acts on interleaved
/// velocity dofs (2*s, 2*s+1); B maps velocity to the linear pressure space
/// as (Bv)_q = -int (div v) psi_q.
struct HydroBlocks {
    SparseMatrix A;  // mass/dt + 2 nu eps:eps + lagged Smagorinsky
    SparseMatrix B;
    Vector f;
    std::vector<std::pair<int, double>> dirichlet;  // lifted values on the whole boundary
    Vector pressure_weights;                        // int psi_i, for the mean-zero gauge
    double area = 0.0;
    double suggested_step = 0.0;  // Uzawa ascent step heuristic
};

SparseMatrix assemble_scalar_mass(const Mesh& mesh, const DofMap& dm);

SparseMatrix assemble_scalar_stiffness(const Mesh& mesh, const DofMap& dm, double K);

/// Robin boundary mass and load: coeff * int_tag phi_j phi_i dgamma and
/// coeff * int_tag data phi_i dgamma.
std::pair<SparseMatrix, Vector> assemble_boundary_terms(const Mesh& mesh, const DofMap& dm,
                                                        const std::vector<BoundaryTag>& tags,
                                                        double coefficient,
                                                        const BoundaryData& data);

/// Semi-implicit radiative surface operator: matrix weighted by |theta_lag|^3
/// at edge quadrature points on the S boundary, load from T_r^4.
std::pair<SparseMatrix, Vector> assemble_radiative(const Mesh& mesh, const DofMap& dm, double b2S,
                                                   const Vector& theta_lag,
                                                   const BoundaryData& Tr_values);

/// Velocity operator, divergence block and load of one hydrodynamic step.
/// The Smagorinsky term is linearized with the lagged field v_lag; the load
/// combines the advected momentum and the buoyancy alpha0 (theta - theta0) a_g.
HydroBlocks assemble_hydro_blocks(const Mesh& mesh, const DofMap& dm, const PhysicalParams& params,
                                  const Vector& v_lag, const Vector& theta_new,
                                  const Vector& theta0, const Vector& advected_momentum_rhs,
                                  double dt);

// --- integration utilities shared by diagnostics and tests ---

/// Volume quadrature points of every triangle, triangle-major.
std::vector<Vec2> quadrature_points(const Mesh& mesh);

double integrate_scalar(const Mesh& mesh, const DofMap& dm, const Vector& field);
double scalar_l2(const Mesh& mesh, const DofMap& dm, const Vector& field);
double grad_l2_sq(const Mesh& mesh, const DofMap& dm, const Vector& field);
double vector_l2(const Mesh& mesh, const DofMap& dm, const Vector& field);

/// int_tag |field|^p dgamma over the tagged boundary edges.
double boundary_lp_integral(const Mesh& mesh, const DofMap& dm, const Vector& field,
                            BoundaryTag tag, double p);

/// Symmetric-gradient seminorm ||eps(v)||_L2 of an interleaved velocity field.
double sym_grad_l2(const Mesh& mesh, const DofMap& dm, const Vector& velocity);

/// Nodal interpolation helpers.
Vector interpolate_scalar(const DofMap& dm, const std::function<double(Vec2)>& f);
Vector interpolate_velocity(const DofMap& dm, const std::function<Vec2(Vec2)>& f);

}  // namespace recirc

#endif
