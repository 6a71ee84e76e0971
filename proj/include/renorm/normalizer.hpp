#pragma once

#include <optional>
#include <string>
#include <utility>

#include "renorm/linalg.hpp"
#include "renorm/transforms.hpp"

namespace renorm {

/// Eigenvalues of the diagonal linear part, in coordinate order.
using Eigenvalues = std::vector<Scalar>;

/// Thrown when an internal invariant of the normalization algorithm fails
/// (a stage modified an already-finalized lower order). This falsifies the
/// implementation, not the input; the CLI maps it to exit code 4.
class internal_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// sum_s m_s lambda_s - lambda_r, the diagonal entry of the homological
/// operator at x^m e_r.
Scalar resonance_value(const Eigenvalues& lambda, const MonomialIndex& mi);

struct ResonanceRelation {
    MonomialIndex mono;
    int order() const { return mono.total_degree(); }
};

/// Independent vector fields spanning a subspace of some V_k (or of an
/// intersection such as H^(p) with V_k).
struct SubspaceBasis {
    std::vector<PolyVectorField> vectors;
    std::string tag;

    bool empty() const { return vectors.empty(); }
    std::size_t size() const { return vectors.size(); }
    /// Common grade of the basis vectors (-2 when empty).
    int grade() const { return vectors.empty() ? -2 : vectors.front().max_grade(); }
};

/// Matrix of a linear operator from a subspace basis into the monomial
/// basis of a V_k; column j holds the image of domain vector j.
struct OperatorMatrix {
    SubspaceBasis domain;
    std::vector<MonomialIndex> codomain;
    ScalarMatrix entries;  // codomain.size() x domain.size()
};

enum class NormalFormFlavor { pd, prf, lrf };

std::string flavor_name(NormalFormFlavor f);

struct StageReport {
    int k = 0;  // order being cleaned
    int p = 0;  // stage: 0 = classical homological step, p >= 1 = higher stage
    std::vector<MonomialIndex> removed;
    std::vector<MonomialIndex> kept;
};

struct NormalFormResult {
    NormalFormFlavor flavor = NormalFormFlavor::pd;
    PolyVectorField normal_form;
    GeneratorSequence generators;
    std::vector<StageReport> report;
};

struct GradeCheck {
    int k = 0;
    bool ok = true;
    std::vector<MonomialIndex> offending;
};

struct CheckReport {
    bool ok = true;
    std::vector<GradeCheck> grades;
};

/// Coordinates of a homogeneous field in a monomial basis list.
std::vector<Scalar> field_to_coords(const PolyVectorField& f,
                                    const std::vector<MonomialIndex>& basis);
PolyVectorField coords_to_field(const std::vector<Scalar>& coords,
                                const std::vector<MonomialIndex>& basis, int n, int trunc);

/// Matrix of the homological operator {Ax, .} on V_k: diagonal with
/// entries m.lambda - lambda_r in the monomial basis.
OperatorMatrix l0_matrix(const Eigenvalues& lambda, int k);

/// All exact resonance relations with 2 <= |m| <= kmax + 1, in canonical
/// monomial order.
std::vector<ResonanceRelation> resonances(const Eigenvalues& lambda, int kmax);

/// Solve L0(h) = nonresonant part of fk. h carries no kernel component
/// (minimal solution); the resonant projection is returned unchanged, and
/// fk - L0(h) = resonant exactly. h is absent when fk is fully resonant.
std::pair<std::optional<Generator>, PolyVectorField> solve_homological(const Eigenvalues& lambda,
                                                                       const PolyVectorField& fk);

/// Classical Poincare-Dulac normalization up to grade N: the result field
/// has only resonant monomials in grades 1..N.
NormalFormResult poincare_dulac(const PolyVectorField& f, const Eigenvalues& lambda, int N);

/// Matrix of alpha -> {fhat_p, alpha} from the domain into the monomial
/// basis of V_{p + grade(domain)}.
OperatorMatrix higher_operator(const PolyVectorField& fhat_p, const SubspaceBasis& domain);

/// Basis of H^(p) intersected with V_g, where H^(p) is the intersection of
/// Ker(L_0), ..., Ker(L_{p-1}) built from the finalized terms (indexed by
/// grade; entry 0 is ignored, the linear part enters through lambda).
/// p = 0 yields the full monomial basis of V_g.
SubspaceBasis nested_kernel_basis(const Eigenvalues& lambda,
                                  const std::vector<PolyVectorField>& finalized, int p, int g);

/// Solve M h = pi(target) where pi is the Bargmann-orthogonal projection
/// onto Ran(M); free variables are zero under the fixed column order. The
/// residual target - M h is exactly Bargmann-orthogonal to Ran(M).
std::pair<std::optional<Generator>, PolyVectorField> solve_higher(const OperatorMatrix& M,
                                                                  const PolyVectorField& target);

/// Full renormalization: for each order k, the classical step followed by
/// higher stages p = 1..k-1 with generators from H^(p). Lower grades are
/// asserted bit-identical after every stage. Accepts a zero linear part
/// (stage 0 then degenerates to a no-op).
NormalFormResult prf(const PolyVectorField& f, const Eigenvalues& lambda, int N);

/// Replay the flavor-specific membership conditions per grade.
CheckReport check_form(const NormalFormResult& result, const Eigenvalues& lambda, int N);

}  // namespace renorm
