#ifndef RECIRC_SOLVERS_HPP
#define RECIRC_SOLVERS_HPP

#include <utility>

#include "recirc/assembly.hpp"
#include "recirc/sparse.hpp"
#include "recirc/types.hpp"

namespace recirc {

struct SolverReport {
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

struct CgOptions {
    double tol = 1e-10;       // relative to ||b||
    int max_iter = 0;         // 0: 4 * n
    const Vector* x0 = nullptr;
};

/// Jacobi-preconditioned conjugate gradients for SPD systems.
std::pair<Vector, SolverReport> cg_solve(const SparseMatrix& A, const Vector& b,
                                         const CgOptions& opts = {});

struct UzawaOptions {
    double step = 0.0;  // 0: use blocks.suggested_step
    double tol_div = 1e-6;
    int max_outer = 500;
    double cg_tol = 1e-10;
    int cg_max_iter = 0;
    const Vector* v0 = nullptr;
    const Vector* p0 = nullptr;
};

struct UzawaResult {
    Vector v;
    Vector p;
    SolverReport report;
    int total_cg_iterations = 0;
    std::vector<double> div_history;  // ||B v|| per outer iteration
};

/// Gradient-ascent Uzawa iteration on the saddle-point problem:
///   v_m = A^{-1}(f - B^T p_m),  p_{m+1} = p_m + step * B v_m,
/// stopping when ||B v||_2 <= tol_div * (1 + ||v||_2). The returned pressure
/// has zero mean over the domain.
UzawaResult uzawa_solve(const HydroBlocks& blocks, const UzawaOptions& opts = {});

}  // namespace recirc

#endif
