#ifndef RECIRC_QUADRATURE_HPP
#define RECIRC_QUADRATURE_HPP

#include <array>
#include <vector>

namespace recirc {

/// Barycentric quadrature rule on the reference triangle. Weights sum to 1;
/// physical integrals scale by the triangle area.
struct TriangleRule {
    std::vector<std::array<double, 3>> points;
    std::vector<double> weights;
    int degree = 0;
};

/// 7-point rule, exact for polynomials of total degree 5.
const TriangleRule& triangle_rule_d5();

/// Gauss-Legendre rule mapped to [0,1]; weights sum to 1. Exact up to
/// degree 2n-1.
struct LineRule {
    std::vector<double> points;
    std::vector<double> weights;
    int degree = 0;
};

LineRule gauss_legendre_01(int n);

/// 6-point edge rule (degree 11) used for all boundary integrals, including
/// the quintic radiative integrand.
const LineRule& edge_rule();

}  // namespace recirc

#endif
