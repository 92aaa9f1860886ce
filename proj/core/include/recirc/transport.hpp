#ifndef RECIRC_TRANSPORT_HPP
#define RECIRC_TRANSPORT_HPP

#include <span>
#include <vector>

#include "recirc/mesh.hpp"
#include "recirc/types.hpp"

namespace recirc {

/// Upstream foot of one evaluation point: location resolved to a containing
/// triangle, clamped to the closest boundary point when the Euler step
/// leaves the domain.
struct Foot {
    Vec2 point;
    int triangle = -1;
    std::array<double, 3> bary{};
    bool clamped = false;
};

struct FootSet {
    std::vector<Foot> feet;
};

/// Feet X(x) = x - dt * v(x) for the given evaluation points, with v the
/// interleaved quadratic velocity field.
FootSet characteristic_feet(const Mesh& mesh, const DofMap& dm, const Vector& velocity, double dt,
                            std::span<const Vec2> eval_points);

/// Quadratic interpolation of a scalar dof field at resolved feet.
Vector interpolate_field(const Mesh& mesh, const DofMap& dm, const Vector& field,
                         const FootSet& feet);

/// (1/dt) * int (prev o X) phi_i dx assembled at the volume quadrature
/// points; scalar fields give a scalar load, interleaved vector fields a
/// vector load.
Vector advected_rhs(const Mesh& mesh, const DofMap& dm, const Vector& prev_field,
                    const Vector& velocity, double dt);

Vector advected_rhs_vector(const Mesh& mesh, const DofMap& dm, const Vector& prev_field,
                           const Vector& velocity, double dt);

}  // namespace recirc

#endif
