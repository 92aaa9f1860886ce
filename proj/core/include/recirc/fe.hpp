#ifndef RECIRC_FE_HPP
#define RECIRC_FE_HPP

#include <array>

#include "recirc/types.hpp"

namespace recirc {

/// Quadratic Lagrange basis on a triangle, local node order
/// [v0, v1, v2, m01, m12, m20] in barycentric coordinates.
inline std::array<double, 6> p2_values(const std::array<double, 3>& l) {
    return {l[0] * (2.0 * l[0] - 1.0), l[1] * (2.0 * l[1] - 1.0), l[2] * (2.0 * l[2] - 1.0),
            4.0 * l[0] * l[1],         4.0 * l[1] * l[2],         4.0 * l[2] * l[0]};
}

/// Gradients of the quadratic basis given the (constant) barycentric
/// gradients of the triangle.
inline std::array<Vec2, 6> p2_gradients(const std::array<double, 3>& l,
                                        const std::array<Vec2, 3>& grad_l) {
    std::array<Vec2, 6> g;
    for (int i = 0; i < 3; ++i) g[i] = (4.0 * l[i] - 1.0) * grad_l[i];
    g[3] = 4.0 * (l[1] * grad_l[0] + l[0] * grad_l[1]);
    g[4] = 4.0 * (l[2] * grad_l[1] + l[1] * grad_l[2]);
    g[5] = 4.0 * (l[0] * grad_l[2] + l[2] * grad_l[0]);
    return g;
}

inline std::array<double, 3> p1_values(const std::array<double, 3>& l) {
    return {l[0], l[1], l[2]};
}

/// Quadratic trace on an edge, parameter s in [0,1], node order
/// [endpoint a, endpoint b, midpoint].
inline std::array<double, 3> edge_p2_values(double s) {
    return {(1.0 - s) * (1.0 - 2.0 * s), s * (2.0 * s - 1.0), 4.0 * s * (1.0 - s)};
}

}  // namespace recirc

#endif
