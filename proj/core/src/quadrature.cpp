#include "recirc/quadrature.hpp"

#include <cmath>

#include "recirc/types.hpp"

namespace recirc {

const TriangleRule& triangle_rule_d5() {
    static const TriangleRule rule = [] {
        TriangleRule r;
        r.degree = 5;
        const double a1 = 0.059715871789769820;
        const double b1 = 0.470142064105115090;
        const double w1 = 0.132394152788506181;
        const double a2 = 0.797426985353087320;
        const double b2 = 0.101286507323456339;
        const double w2 = 0.125939180544827153;
        r.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
        r.weights.push_back(0.225);
        for (int k = 0; k < 3; ++k) {
            std::array<double, 3> p{b1, b1, b1};
            p[k] = a1;
            r.points.push_back(p);
            r.weights.push_back(w1);
        }
        for (int k = 0; k < 3; ++k) {
            std::array<double, 3> p{b2, b2, b2};
            p[k] = a2;
            r.points.push_back(p);
            r.weights.push_back(w2);
        }
        return r;
    }();
    return rule;
}

LineRule gauss_legendre_01(int n) {
    if (n < 1) throw param_error("gauss_legendre_01: n must be >= 1");
    LineRule r;
    r.degree = 2 * n - 1;
    r.points.resize(n);
    r.weights.resize(n);
    // Newton iteration on P_n roots, symmetric pairs, standard [-1,1] rule.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.points[i] = 0.5 * (1.0 - x);
        r.points[n - 1 - i] = 0.5 * (1.0 + x);
        r.weights[i] = 0.5 * w;
        r.weights[n - 1 - i] = 0.5 * w;
    }
    return r;
}

const LineRule& edge_rule() {
    static const LineRule rule = gauss_legendre_01(6);
    return rule;
}

}  // namespace recirc
