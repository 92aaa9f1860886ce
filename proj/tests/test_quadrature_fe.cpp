#include <doctest.h>

#include <cmath>

#include "recirc/fe.hpp"
#include "recirc/quadrature.hpp"
#include "support/oracles.hpp"

using namespace recirc;

TEST_CASE("triangle rule integrates barycentric monomials exactly to degree 5") {
    const auto& rule = triangle_rule_d5();
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));

    for (int a = 0; a <= 5; ++a)
        for (int b = 0; a + b <= 5; ++b) {
            const int c = 5 - a - b;
            double num = 0.0;
            for (std::size_t q = 0; q < rule.points.size(); ++q) {
                const auto& l = rule.points[q];
                num += rule.weights[q] * std::pow(l[0], a) * std::pow(l[1], b) * std::pow(l[2], c);
            }
            const double exact = oracle::Poly3::term(1.0, a, b, c).integrate(0.5) / 0.5;
            CHECK(num == doctest::Approx(exact).epsilon(1e-13));
        }
}

TEST_CASE("edge rule is exact to degree 11") {
    const auto& rule = edge_rule();
    for (int k = 0; k <= 11; ++k) {
        double num = 0.0;
        for (std::size_t q = 0; q < rule.points.size(); ++q)
            num += rule.weights[q] * std::pow(rule.points[q], k);
        CHECK(num == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
    }
    // degree 12 must NOT integrate exactly (sharpness)
    double num12 = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q)
        num12 += rule.weights[q] * std::pow(rule.points[q], 12);
    CHECK(std::abs(num12 - 1.0 / 13.0) > 1e-10);
}

TEST_CASE("gauss_legendre_01 generator matches low-order closed forms") {
    const LineRule g2 = gauss_legendre_01(2);
    CHECK(g2.points[0] == doctest::Approx(0.5 - 0.5 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(g2.weights[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(gauss_legendre_01(0), param_error);
}

TEST_CASE("quadratic basis: partition of unity, kronecker property") {
    oracle::Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        double a = rng.uniform(0.0, 1.0);
        double b = rng.uniform(0.0, 1.0 - a);
        const std::array<double, 3> l = {a, b, 1.0 - a - b};
        const auto v = p2_values(l);
        double sum = 0.0;
        for (double vi : v) sum += vi;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
    }
    // nodal values: vertices and midpoints
    CHECK(p2_values({1, 0, 0})[0] == doctest::Approx(1.0));
    CHECK(p2_values({0.5, 0.5, 0})[3] == doctest::Approx(1.0));
    CHECK(p2_values({0.5, 0.5, 0})[0] == doctest::Approx(0.0));
    CHECK(p2_values({0, 0.5, 0.5})[4] == doctest::Approx(1.0));
    CHECK(p2_values({0.5, 0, 0.5})[5] == doctest::Approx(1.0));
}

TEST_CASE("edge trace basis") {
    CHECK(edge_p2_values(0.0)[0] == doctest::Approx(1.0));
    CHECK(edge_p2_values(1.0)[1] == doctest::Approx(1.0));
    CHECK(edge_p2_values(0.5)[2] == doctest::Approx(1.0));
    const auto v = edge_p2_values(0.3);
    CHECK(v[0] + v[1] + v[2] == doctest::Approx(1.0).epsilon(1e-14));
}
