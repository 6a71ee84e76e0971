#pragma once

#include <complex>
#include <map>
#include <vector>

#include "renorm/field.hpp"
#include "renorm/scalar.hpp"

namespace renorm {

/// Sparse scalar polynomial in n variables with a total-degree cap.
/// Supports the series manipulations needed for flow maps and coordinate
/// substitutions; all operations truncate above the cap.
class ScalarPoly {
public:
    using TermMap = std::map<std::vector<int>, Scalar>;

    ScalarPoly() = default;
    ScalarPoly(int n, int max_deg) : n_(n), max_deg_(max_deg) {}

    static ScalarPoly constant(int n, const Scalar& c, int max_deg);
    static ScalarPoly variable(int n, int i, int max_deg);

    int dimension() const { return n_; }
    int degree_cap() const { return max_deg_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Total degree of the highest stored term (-1 when zero).
    int degree() const;

    void add_term(const std::vector<int>& exps, const Scalar& c);
    Scalar coefficient(const std::vector<int>& exps) const;

    ScalarPoly operator+(const ScalarPoly& o) const;
    ScalarPoly operator-(const ScalarPoly& o) const;
    ScalarPoly operator*(const ScalarPoly& o) const;
    ScalarPoly scaled(const Scalar& c) const;
    ScalarPoly pow(int p) const;
    ScalarPoly derivative(int i) const;
    ScalarPoly truncated(int max_deg) const;

    /// Substitute variable i -> subs[i] (polynomials in possibly different
    /// dimension); result inherits subs' dimension and this cap.
    ScalarPoly compose(const std::vector<ScalarPoly>& subs) const;

    std::complex<double> evaluate(const std::vector<std::complex<double>>& x) const;

    bool operator==(const ScalarPoly& o) const { return terms_ == o.terms_; }

private:
    int n_ = 0;
    int max_deg_ = 0;
    TermMap terms_;
};

/// Polynomial map K^n -> K^n, one ScalarPoly per component.
struct PolyMap {
    std::vector<ScalarPoly> comp;

    static PolyMap identity(int n, int max_deg);

    int dimension() const { return static_cast<int>(comp.size()); }
    std::vector<std::complex<double>> evaluate(const std::vector<std::complex<double>>& x) const;
};

/// Component r of a vector field as a scalar polynomial.
ScalarPoly field_component_poly(const PolyVectorField& f, int r, int max_deg);

/// Assemble component polynomials into a field truncated at grade nmax.
PolyVectorField polys_to_field(const std::vector<ScalarPoly>& comps, int nmax);

}  // namespace renorm
