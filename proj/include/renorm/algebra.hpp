#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "renorm/field.hpp"

namespace renorm {

/// Declares which coordinates form complex-conjugate pairs when a real
/// system is handled through complex-diagonal machinery.
struct RealPairStructure {
    std::vector<std::pair<int, int>> pairs;  // 0-based (i, j) conjugate pairs
    std::vector<int> real_indices;

    /// The standard planar pair (x_1, x_2) <-> (z, conj z).
    static RealPairStructure planar() { return RealPairStructure{{{0, 1}}, {}}; }
};

/// Commutator of vector fields: (phi . grad) psi - (psi . grad) phi.
/// Grade-additive: [V_i, V_j] lands in V_{i+j}. Result truncated at the
/// smaller truncation order.
PolyVectorField bracket(const PolyVectorField& phi, const PolyVectorField& psi);

/// Bargmann product: (x^m e_r, x^mu e_s) = delta_{r,s} delta_{m,mu} m!,
/// conjugate-linear in the first argument.
Scalar bargmann_inner(const PolyVectorField& v, const PolyVectorField& w);

/// Component of grade k (homogeneous degree k+1).
PolyVectorField grade_project(const PolyVectorField& f, int k);

/// Monomial basis of V_k: all (m, r) with |m| = k+1, in canonical order.
/// Count is n * C(n+k, k+1).
std::vector<MonomialIndex> monomial_basis(int n, int k);

/// Pointwise evaluation; exact coefficients are coerced to binary64.
std::vector<std::complex<double>> evaluate(const PolyVectorField& f,
                                           const std::vector<std::complex<double>>& x);

/// True when f is invariant under the conjugation defined by the pair
/// structure: c(sigma(m), sigma(r)) == conj(c(m, r)) for every term.
bool check_reality(const PolyVectorField& f, const RealPairStructure& pair);

/// Planar change z1 = x1 + i x2, z2 = x1 - i x2. Requires a real input
/// field whose linear part is a conjugate-pair block [[a,-b],[b,a]]; the
/// result has diagonal linear part diag(a+ib, a-ib).
PolyVectorField complexify_planar(const PolyVectorField& real_field, const RealPairStructure& pair);

/// Inverse of complexify_planar. Requires the input to satisfy
/// check_reality; the result has exactly real coefficients.
PolyVectorField realify_planar(const PolyVectorField& complex_field, const RealPairStructure& pair);

}  // namespace renorm
