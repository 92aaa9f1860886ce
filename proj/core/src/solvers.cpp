#include "recirc/solvers.hpp"

#include <algorithm>
#include <cmath>

#include "recirc/linalg.hpp"

namespace recirc {

std::pair<Vector, SolverReport> cg_solve(const SparseMatrix& A, const Vector& b,
                                         const CgOptions& opts) {
    const int n = A.rows();
    const int max_iter = opts.max_iter > 0 ? opts.max_iter : 4 * n;
    SolverReport rep;

    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        rep.converged = true;
        return {Vector(n, 0.0), rep};
    }

    Vector invdiag = A.diagonal();
    for (double& d : invdiag) d = (d != 0.0) ? 1.0 / d : 1.0;

    Vector x = opts.x0 ? *opts.x0 : Vector(n, 0.0);
    Vector r(n), z(n), p(n), Ap(n);
    A.multiply(x, Ap);
    for (int i = 0; i < n; ++i) r[i] = b[i] - Ap[i];

    double rnorm = norm2(r);
    if (rnorm <= opts.tol * bnorm) {
        rep.converged = true;
        rep.residual = rnorm;
        return {std::move(x), rep};
    }

    for (int i = 0; i < n; ++i) z[i] = invdiag[i] * r[i];
    p = z;
    double rz = dot(r, z);

    for (int it = 1; it <= max_iter; ++it) {
        A.multiply(p, Ap);
        const double pAp = dot(p, Ap);
        if (!std::isfinite(pAp)) throw numerical_error("cg_solve: NaN in iteration");
        const double alpha = rz / pAp;
        axpy(alpha, p, x);
        axpy(-alpha, Ap, r);
        rnorm = norm2(r);
        rep.iterations = it;
        if (!std::isfinite(rnorm)) throw numerical_error("cg_solve: NaN residual");
        if (rnorm <= opts.tol * bnorm) {
            rep.converged = true;
            break;
        }
        for (int i = 0; i < n; ++i) z[i] = invdiag[i] * r[i];
        const double rz_new = dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    rep.residual = rnorm;
    return {std::move(x), rep};
}

UzawaResult uzawa_solve(const HydroBlocks& blocks, const UzawaOptions& opts) {
    const int nv = blocks.A.rows();
    const int np = blocks.B.rows();
    const double step = opts.step > 0.0 ? opts.step : blocks.suggested_step;
    if (step <= 0.0) throw param_error("uzawa_solve: ascent step must be positive");

    std::vector<char> fixed(nv, 0);
    for (auto [d, v] : blocks.dirichlet) fixed[d] = 1;

    // lift the boundary values into the operator once
    SparseMatrix A = blocks.A;
    Vector f = blocks.f;
    apply_dirichlet(A, f, blocks.dirichlet, true);

    UzawaResult res;
    res.p = opts.p0 ? *opts.p0 : Vector(np, 0.0);
    res.v = opts.v0 ? *opts.v0 : Vector(nv, 0.0);

    auto remove_pressure_mean = [&](Vector& p) {
        const double mean = dot(blocks.pressure_weights, p) / blocks.area;
        for (double& pi : p) pi -= mean;
    };
    remove_pressure_mean(res.p);

    Vector rhs(nv), Btp(nv), div(np);
    CgOptions cg;
    cg.tol = opts.cg_tol;
    cg.max_iter = opts.cg_max_iter;

    for (int m = 1; m <= opts.max_outer; ++m) {
        blocks.B.multiply_transpose(res.p, Btp);
        for (int i = 0; i < nv; ++i) rhs[i] = fixed[i] ? f[i] : f[i] - Btp[i];

        cg.x0 = &res.v;
        auto [v, crep] = cg_solve(A, rhs, cg);
        if (!crep.converged)
            throw solver_error("uzawa_solve: inner CG failed to converge (residual " +
                               std::to_string(crep.residual) + ")");
        res.v = std::move(v);
        res.total_cg_iterations += crep.iterations;

        blocks.B.multiply(res.v, div);
        const double div_norm = norm2(div);
        if (!std::isfinite(div_norm)) throw numerical_error("uzawa_solve: NaN divergence");
        res.div_history.push_back(div_norm);
        res.report.iterations = m;
        res.report.residual = div_norm;
        if (div_norm <= opts.tol_div * (1.0 + norm2(res.v))) {
            res.report.converged = true;
            break;
        }
        axpy(step, div, res.p);
        remove_pressure_mean(res.p);
    }
    remove_pressure_mean(res.p);
    return res;
}

}  // namespace recirc
