#pragma once

#include "renorm/normalizer.hpp"

namespace renorm {

/// Thrown when a requested reduction method does not apply to the input
/// (non-quasi-linear field, non-terminating chain). The CLI maps this to
/// exit code 3.
class method_inapplicable : public std::runtime_error {
public:
    explicit method_inapplicable(const std::string& what, int failing_grade = -1)
        : std::runtime_error(what), failing_grade(failing_grade) {}
    int failing_grade;
};

/// Basis K_1..K_d of the centralizer of A = diag(lambda), with K_1 = I and
/// K_2 = A whenever A is nonzero and independent of I.
struct CentralizerBasis {
    std::vector<ScalarMatrix> mats;
    bool includes_A = false;
    int n = 0;

    std::size_t size() const { return mats.size(); }
};

CentralizerBasis centralizer_basis(const Eigenvalues& lambda);

/// Exponent vectors m with m . lambda = 0: degrees 2..cap always, degree 1
/// only for coordinates with a zero eigenvalue. Complete up to the cap.
struct InvariantSet {
    std::vector<std::vector<int>> exponents;
    int cap = 0;
};

InvariantSet invariant_monomials(const Eigenvalues& lambda, int deg_cap);

/// The module field x^m (K x).
PolyVectorField module_field(const std::vector<int>& exps, const ScalarMatrix& K, int trunc);

/// Per-grade coefficients of W = sum_alpha mu_alpha(x) (K_alpha x) with
/// each mu_alpha supported on invariant monomials. Failure at a grade is
/// recorded, not thrown: success at every grade is the quasi-linearity
/// witness for W.
struct GradeDecomposition {
    int k = 0;
    bool ok = false;
    std::vector<ScalarPoly> coeff;  // one polynomial per basis matrix
};

struct ModuleDecomposition {
    bool quasi_linear = true;
    int first_failing_grade = -1;
    std::vector<GradeDecomposition> per_grade;
};

ModuleDecomposition module_decompose(const PolyVectorField& W, const CentralizerBasis& basis,
                                     const InvariantSet& inv);

/// Descending central series of span{K_alpha} read off as index subsets of
/// the basis: series[0] = all indices, series.back() empty when the series
/// terminates. factors[p] = series[p] minus series[p+1].
struct NilpotentChain {
    std::vector<std::vector<int>> series;
    std::vector<std::vector<int>> factors;
    bool terminates = true;      // reaches the zero subalgebra
    bool representable = true;   // every G_p is spanned by a basis subset
};

NilpotentChain chain_from_central_series(const CentralizerBasis& basis);

/// Lie renormalized form: Poincare-Dulac first, then a PRF-style per-grade
/// reduction inside each centralizer factor in chain order (basis order
/// within an abelian factor), guaranteeing earlier factors' components are
/// never changed. Throws method_inapplicable when the field is not
/// quasi-linear or the chain does not terminate.
NormalFormResult lrf(const PolyVectorField& f, const Eigenvalues& lambda, int N);

}  // namespace renorm
