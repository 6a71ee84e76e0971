#pragma once

#include <map>
#include <vector>

#include "renorm/scalar.hpp"

namespace renorm {

/// Exponent vector plus direction: the monomial vector field x^m e_dir.
/// Directions are 0-based internally (JSON uses 1-based "r").
struct MonomialIndex {
    std::vector<int> m;
    int dir = 0;

    MonomialIndex() = default;
    MonomialIndex(std::vector<int> exps, int direction) : m(std::move(exps)), dir(direction) {}

    int total_degree() const {
        int s = 0;
        for (int e : m) s += e;
        return s;
    }
    /// Grade of x^m e_dir as a vector field: |m| - 1.
    int grade() const { return total_degree() - 1; }

    bool operator==(const MonomialIndex& o) const { return dir == o.dir && m == o.m; }
};

/// Canonical ordering: grade, then direction, then exponents with x_1
/// dominating (so x_1 e_1, x_2 e_1, x_1 e_2, x_2 e_2 for n=2, grade 0).
/// Fixes all matrix representations and tie-breaks.
struct MonomialOrder {
    bool operator()(const MonomialIndex& a, const MonomialIndex& b) const {
        int da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db;
        if (a.dir != b.dir) return a.dir < b.dir;
        return a.m > b.m;  // higher power of earlier variables first
    }
};

/// m! = prod m_s!
inline BigInt monomial_factorial(const MonomialIndex& mi) {
    BigInt r = 1;
    for (int e : mi.m) r *= factorial(e);
    return r;
}

/// Sparse homogeneous-graded polynomial vector field on K^n, truncated at
/// grade N. Terms map monomials to nonzero coefficients; the grade-k part
/// is the homogeneous component of degree k+1. Immutable by convention:
/// all operations return new values.
class PolyVectorField {
public:
    using TermMap = std::map<MonomialIndex, Scalar, MonomialOrder>;

    PolyVectorField() = default;
    PolyVectorField(int n, int trunc) : n_(n), trunc_(trunc) {}

    /// Diagonal linear field diag(lambda) . x.
    static PolyVectorField linear(const std::vector<Scalar>& lambda, int trunc);

    int dimension() const { return n_; }
    int truncation() const { return trunc_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Scalar coefficient(const MonomialIndex& mi) const {
        auto it = terms_.find(mi);
        return it == terms_.end() ? Scalar() : it->second;
    }

    /// Accumulate c * x^m e_dir; drops the entry if the sum is zero and
    /// silently discards grades above the truncation order.
    void add_term(const MonomialIndex& mi, const Scalar& c);

    PolyVectorField operator+(const PolyVectorField& o) const;
    PolyVectorField operator-(const PolyVectorField& o) const;
    PolyVectorField operator-() const;
    PolyVectorField scaled(const Scalar& c) const;

    /// Component of grade k (monomials with |m| = k + 1).
    PolyVectorField grade_component(int k) const;
    /// New field truncated at grade nmax.
    PolyVectorField truncated(int nmax) const;
    /// Coerce all coefficients to the floating backend.
    PolyVectorField to_floating() const;

    int min_grade() const;  // -2 when empty
    int max_grade() const;  // -2 when empty
    std::vector<int> grades_present() const;

    bool operator==(const PolyVectorField& o) const {
        return n_ == o.n_ && trunc_ == o.trunc_ && terms_ == o.terms_;
    }

    std::string str() const;

private:
    int n_ = 0;
    int trunc_ = 0;
    TermMap terms_;
};

}  // namespace renorm
