#ifndef RECIRC_LINALG_HPP
#define RECIRC_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "recirc/types.hpp"

namespace recirc {

inline double dot(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(const Vector& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

/// y += alpha * x
inline void axpy(double alpha, const Vector& x, Vector& y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline Vector scaled(double alpha, const Vector& x) {
    Vector y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = alpha * x[i];
    return y;
}

inline double max_abs_diff(const Vector& a, const Vector& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline bool has_nan(const Vector& a) {
    for (double v : a)
        if (!std::isfinite(v)) return true;
    return false;
}

}  // namespace recirc

#endif
