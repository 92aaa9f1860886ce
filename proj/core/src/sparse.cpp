#include "recirc/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace recirc {

SparseMatrix SparseMatrix::from_triplets(int rows, int cols, std::vector<int> ti,
                                         std::vector<int> tj, std::vector<double> tv,
                                         bool symmetric) {
    SparseMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.symmetric_ = symmetric;

    const std::size_t n = ti.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (ti[a] != ti[b]) return ti[a] < ti[b];
        if (tj[a] != tj[b]) return tj[a] < tj[b];
        return a < b;  // stable: keeps accumulation order deterministic
    });

    m.row_ptr_.assign(rows + 1, 0);
    m.col_idx_.reserve(n);
    m.vals_.reserve(n);

    for (std::size_t k = 0; k < n;) {
        const int i = ti[order[k]];
        const int j = tj[order[k]];
        double s = 0.0;
        while (k < n && ti[order[k]] == i && tj[order[k]] == j) {
            s += tv[order[k]];
            ++k;
        }
        m.col_idx_.push_back(j);
        m.vals_.push_back(s);
        ++m.row_ptr_[i + 1];
    }
    for (int i = 0; i < rows; ++i) m.row_ptr_[i + 1] += m.row_ptr_[i];
    return m;
}

void SparseMatrix::multiply(const Vector& x, Vector& y) const {
    y.assign(rows_, 0.0);
    for (int i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += vals_[k] * x[col_idx_[k]];
        y[i] = s;
    }
}

Vector SparseMatrix::multiply(const Vector& x) const {
    Vector y;
    multiply(x, y);
    return y;
}

void SparseMatrix::multiply_transpose(const Vector& x, Vector& y) const {
    y.assign(cols_, 0.0);
    for (int i = 0; i < rows_; ++i) {
        const double xi = x[i];
        if (xi == 0.0) continue;
        for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) y[col_idx_[k]] += vals_[k] * xi;
    }
}

Vector SparseMatrix::multiply_transpose(const Vector& x) const {
    Vector y;
    multiply_transpose(x, y);
    return y;
}

Vector SparseMatrix::diagonal() const {
    Vector d(rows_, 0.0);
    for (int i = 0; i < rows_; ++i)
        for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
            if (col_idx_[k] == i) d[i] = vals_[k];
    return d;
}

double SparseMatrix::max_abs() const {
    double m = 0.0;
    for (double v : vals_) m = std::max(m, std::abs(v));
    return m;
}

double SparseMatrix::asymmetry() const {
    double m = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
            m = std::max(m, std::abs(vals_[k] - coeff(col_idx_[k], i)));
    return m;
}

double SparseMatrix::coeff(int i, int j) const {
    const int lo = row_ptr_[i], hi = row_ptr_[i + 1];
    auto it = std::lower_bound(col_idx_.begin() + lo, col_idx_.begin() + hi, j);
    if (it != col_idx_.begin() + hi && *it == j) return vals_[it - col_idx_.begin()];
    return 0.0;
}

void SparseMatrix::add_scaled(double alpha, const SparseMatrix& other) {
    std::vector<int> rp(rows_ + 1, 0);
    std::vector<int> ci;
    std::vector<double> vv;
    ci.reserve(nnz() + other.nnz());
    vv.reserve(nnz() + other.nnz());

    for (int i = 0; i < rows_; ++i) {
        int a = row_ptr_[i], ae = row_ptr_[i + 1];
        int b = other.row_ptr_[i], be = other.row_ptr_[i + 1];
        while (a < ae || b < be) {
            int ja = a < ae ? col_idx_[a] : cols_;
            int jb = b < be ? other.col_idx_[b] : cols_;
            if (ja < jb) {
                ci.push_back(ja);
                vv.push_back(vals_[a++]);
            } else if (jb < ja) {
                ci.push_back(jb);
                vv.push_back(alpha * other.vals_[b++]);
            } else {
                ci.push_back(ja);
                vv.push_back(vals_[a++] + alpha * other.vals_[b++]);
            }
        }
        rp[i + 1] = static_cast<int>(ci.size());
    }
    row_ptr_ = std::move(rp);
    col_idx_ = std::move(ci);
    vals_ = std::move(vv);
}

void apply_dirichlet(SparseMatrix& A, Vector& rhs,
                     const std::vector<std::pair<int, double>>& constraints, bool symmetric) {
    std::vector<char> fixed(A.rows_, 0);
    Vector value(A.rows_, 0.0);
    for (auto [d, v] : constraints) {
        fixed[d] = 1;
        value[d] = v;
    }

    if (symmetric) {
        // move known columns to the RHS before zeroing them
        for (int i = 0; i < A.rows_; ++i) {
            if (fixed[i]) continue;
            for (int k = A.row_ptr_[i]; k < A.row_ptr_[i + 1]; ++k) {
                const int j = A.col_idx_[k];
                if (fixed[j]) {
                    rhs[i] -= A.vals_[k] * value[j];
                    A.vals_[k] = 0.0;
                }
            }
        }
    }

    for (int i = 0; i < A.rows_; ++i) {
        if (!fixed[i]) continue;
        for (int k = A.row_ptr_[i]; k < A.row_ptr_[i + 1]; ++k)
            A.vals_[k] = (A.col_idx_[k] == i) ? 1.0 : 0.0;
        rhs[i] = value[i];
    }
}

}  // namespace recirc
