#pragma once

#include <optional>
#include <vector>

#include "renorm/scalar.hpp"

namespace renorm {

/// Dense matrix of Scalars. Sized for the homogeneous-slice problems this
/// engine solves (tens of rows), with exact Gaussian elimination over the
/// rational backend and tolerance-based pivoting over the floating one.
class ScalarMatrix {
public:
    ScalarMatrix() = default;
    ScalarMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ScalarMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Scalar& at(int i, int j) { return data_[i * cols_ + j]; }
    const Scalar& at(int i, int j) const { return data_[i * cols_ + j]; }

    ScalarMatrix operator*(const ScalarMatrix& o) const;
    std::vector<Scalar> apply(const std::vector<Scalar>& v) const;
    ScalarMatrix conj_transpose() const;
    ScalarMatrix operator-(const ScalarMatrix& o) const;

    bool is_zero() const;

    /// Append o's columns to the right (same row count).
    ScalarMatrix hcat(const ScalarMatrix& o) const;
    std::vector<Scalar> column(int j) const;
    static ScalarMatrix from_columns(const std::vector<std::vector<Scalar>>& cols);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Scalar> data_;
};

/// In-place reduced row echelon form; returns the pivot column indices.
/// Deterministic: first usable pivot row in column order.
std::vector<int> rref(ScalarMatrix& m);

int rank(ScalarMatrix m);

/// Columns form the canonical nullspace basis (one per free column of the
/// RREF, unit entry at the free column).
ScalarMatrix nullspace(ScalarMatrix m);

/// Solve A x = b exactly; free variables are set to zero. Empty optional
/// when inconsistent.
std::optional<std::vector<Scalar>> solve_pivot(ScalarMatrix a, std::vector<Scalar> b);

/// Minimize the weighted Hermitian residual ||M x - t||_W (W = positive
/// diagonal weights) via the normal equations; free variables zero. The
/// residual t - M x is exactly W-orthogonal to Ran(M).
std::vector<Scalar> lstsq_weighted(const ScalarMatrix& m, const std::vector<Scalar>& weights,
                                   const std::vector<Scalar>& t);

}  // namespace renorm
