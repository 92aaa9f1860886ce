#ifndef RECIRC_TYPES_HPP
#define RECIRC_TYPES_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace recirc {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

using Vector = std::vector<double>;

/// Bad user-supplied parameter or geometry description.
struct param_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Configuration file problems (missing key, parse failure, validation).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Iterative solver failed to converge within its budget.
struct solver_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// NaN/Inf detected inside a numerical kernel.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace recirc

#endif
