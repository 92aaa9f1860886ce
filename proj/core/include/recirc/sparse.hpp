#ifndef RECIRC_SPARSE_HPP
#define RECIRC_SPARSE_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "recirc/types.hpp"

namespace recirc {

/// Compressed sparse row matrix. Built from triplets; duplicate (row, col)
/// entries are summed during finalization, so the assembled matrix has a
/// unique entry per position.
class SparseMatrix {
  public:
    SparseMatrix() = default;

    static SparseMatrix from_triplets(int rows, int cols,
                                      std::vector<int> ti, std::vector<int> tj,
                                      std::vector<double> tv, bool symmetric = false);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool symmetric_flag() const { return symmetric_; }
    void set_symmetric_flag(bool s) { symmetric_ = s; }

    std::size_t nnz() const { return vals_.size(); }

    const std::vector<int>& row_ptr() const { return row_ptr_; }
    const std::vector<int>& col_idx() const { return col_idx_; }
    const std::vector<double>& values() const { return vals_; }
    std::vector<double>& values() { return vals_; }

    /// y = A x
    void multiply(const Vector& x, Vector& y) const;
    Vector multiply(const Vector& x) const;

    /// y = A^T x  (scatter form; used for the divergence-operator transpose)
    void multiply_transpose(const Vector& x, Vector& y) const;
    Vector multiply_transpose(const Vector& x) const;

    Vector diagonal() const;
    double max_abs() const;

    /// Largest |A - A^T| entry; 0 for structurally symmetric content.
    double asymmetry() const;

    /// this += alpha * other (patterns may differ; result pattern is the union).
    void add_scaled(double alpha, const SparseMatrix& other);

    double coeff(int i, int j) const;

  private:
    int rows_ = 0, cols_ = 0;
    bool symmetric_ = false;
    std::vector<int> row_ptr_;
    std::vector<int> col_idx_;
    std::vector<double> vals_;

    friend void apply_dirichlet(SparseMatrix&, Vector&,
                                const std::vector<std::pair<int, double>>&, bool);
};

/// Element-assembly accumulator: collects (i, j, v) triplets and load-vector
/// contributions, then compresses once.
class TripletAccumulator {
  public:
    TripletAccumulator(int rows, int cols) : rows_(rows), cols_(cols) {}

    void add(int i, int j, double v) {
        ti_.push_back(i);
        tj_.push_back(j);
        tv_.push_back(v);
    }

    SparseMatrix compress(bool symmetric = false) {
        return SparseMatrix::from_triplets(rows_, cols_, std::move(ti_), std::move(tj_),
                                           std::move(tv_), symmetric);
    }

  private:
    int rows_, cols_;
    std::vector<int> ti_, tj_;
    std::vector<double> tv_;
};

/// Impose Dirichlet constraints (dof, value) by row replacement with identity
/// rows and RHS substitution. With symmetric=true the columns are eliminated
/// as well (RHS compensated), preserving symmetry for CG.
void apply_dirichlet(SparseMatrix& A, Vector& rhs,
                     const std::vector<std::pair<int, double>>& constraints,
                     bool symmetric = true);

}  // namespace recirc

#endif
