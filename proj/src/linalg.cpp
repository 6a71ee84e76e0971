#include "renorm/linalg.hpp"

#include <stdexcept>

namespace renorm {

ScalarMatrix ScalarMatrix::identity(int n) {
    ScalarMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
}

ScalarMatrix ScalarMatrix::operator*(const ScalarMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("ScalarMatrix: shape mismatch");
    ScalarMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Scalar& a = at(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) {
                const Scalar& b = o.at(k, j);
                if (!b.is_zero()) r.at(i, j) += a * b;
            }
        }
    return r;
}

std::vector<Scalar> ScalarMatrix::apply(const std::vector<Scalar>& v) const {
    if (static_cast<int>(v.size()) != cols_)
        throw std::invalid_argument("ScalarMatrix: vector length mismatch");
    std::vector<Scalar> r(rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
    return r;
}

ScalarMatrix ScalarMatrix::conj_transpose() const {
    ScalarMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j).conj();
    return r;
}

ScalarMatrix ScalarMatrix::operator-(const ScalarMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("ScalarMatrix: shape mismatch");
    ScalarMatrix r(rows_, cols_);
    for (int i = 0; i < rows_ * cols_; ++i) r.data_[i] = data_[i] - o.data_[i];
    return r;
}

bool ScalarMatrix::is_zero() const {
    for (const auto& s : data_)
        if (!s.is_zero()) return false;
    return true;
}

ScalarMatrix ScalarMatrix::hcat(const ScalarMatrix& o) const {
    if (rows_ != o.rows_) throw std::invalid_argument("ScalarMatrix: row count mismatch");
    ScalarMatrix r(rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (int j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
}

std::vector<Scalar> ScalarMatrix::column(int j) const {
    std::vector<Scalar> c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
}

ScalarMatrix ScalarMatrix::from_columns(const std::vector<std::vector<Scalar>>& cols) {
    if (cols.empty()) return ScalarMatrix(0, 0);
    ScalarMatrix m(static_cast<int>(cols[0].size()), static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols(); ++j) {
        if (cols[j].size() != cols[0].size())
            throw std::invalid_argument("from_columns: ragged columns");
        for (int i = 0; i < m.rows(); ++i) m.at(i, j) = cols[j][i];
    }
    return m;
}

namespace {
// Pivot row at or below `start` in column `col`: first nonzero entry on the
// exact backend, largest modulus on the floating one.
int find_pivot(const ScalarMatrix& m, int start, int col) {
    int best = -1;
    double best_abs = 0.0;
    for (int i = start; i < m.rows(); ++i) {
        const Scalar& s = m.at(i, col);
        if (s.is_zero()) continue;
        if (s.is_exact()) return i;
        double a = s.abs();
        if (a > best_abs) {
            best_abs = a;
            best = i;
        }
    }
    return best;
}
}  // namespace

std::vector<int> rref(ScalarMatrix& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = find_pivot(m, row, col);
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(row, j));
        Scalar inv = Scalar(1) / m.at(row, col);
        for (int j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
        m.at(row, col) = Scalar(1);  // avoid float residue
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row) continue;
            Scalar f = m.at(i, col);
            if (f.is_zero()) continue;
            for (int j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
            m.at(i, col) = Scalar(0);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int rank(ScalarMatrix m) { return static_cast<int>(rref(m).size()); }

ScalarMatrix nullspace(ScalarMatrix m) {
    const int rows = m.rows(), cols = m.cols();
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;

    std::vector<std::vector<Scalar>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Scalar> v(cols);
        v[f] = Scalar(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            if (static_cast<int>(r) < rows) v[pivots[r]] = -m.at(static_cast<int>(r), f);
        }
        basis.push_back(std::move(v));
    }
    if (basis.empty()) return ScalarMatrix(cols, 0);
    return ScalarMatrix::from_columns(basis);
}

std::optional<std::vector<Scalar>> solve_pivot(ScalarMatrix a, std::vector<Scalar> b) {
    if (static_cast<int>(b.size()) != a.rows())
        throw std::invalid_argument("solve_pivot: rhs length mismatch");
    ScalarMatrix rhs(a.rows(), 1);
    for (int i = 0; i < a.rows(); ++i) rhs.at(i, 0) = b[i];
    ScalarMatrix aug = a.hcat(rhs);
    std::vector<int> pivots = rref(aug);
    // inconsistent iff a pivot lands in the rhs column
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    std::vector<Scalar> x(a.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x[pivots[r]] = aug.at(static_cast<int>(r), a.cols());
    return x;
}

std::vector<Scalar> lstsq_weighted(const ScalarMatrix& m, const std::vector<Scalar>& weights,
                                   const std::vector<Scalar>& t) {
    if (static_cast<int>(weights.size()) != m.rows() || static_cast<int>(t.size()) != m.rows())
        throw std::invalid_argument("lstsq_weighted: size mismatch");
    // normal equations M^H W M x = M^H W t
    ScalarMatrix mh = m.conj_transpose();
    ScalarMatrix wm(m.rows(), m.cols());
    std::vector<Scalar> wt(m.rows());
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) wm.at(i, j) = weights[i] * m.at(i, j);
        wt[i] = weights[i] * t[i];
    }
    ScalarMatrix gram = mh * wm;
    std::vector<Scalar> rhs = mh.apply(wt);
    auto x = solve_pivot(std::move(gram), std::move(rhs));
    if (!x) throw std::logic_error("lstsq_weighted: normal equations inconsistent");
    return *x;
}

}  // namespace renorm
