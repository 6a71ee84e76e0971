#include "renorm/normalizer.hpp"

#include <algorithm>
#include <stdexcept>

namespace renorm {

Scalar resonance_value(const Eigenvalues& lambda, const MonomialIndex& mi) {
    if (lambda.size() != mi.m.size())
        throw std::invalid_argument("resonance_value: dimension mismatch");
    Scalar acc;
    bool exact = true;
    for (const auto& l : lambda) exact = exact && l.is_exact();
    acc = exact ? Scalar(0) : Scalar::floating(0.0);
    for (std::size_t s = 0; s < lambda.size(); ++s)
        if (mi.m[s] != 0) acc += Scalar(static_cast<int>(mi.m[s])) * lambda[s];
    return acc - lambda[mi.dir];
}

std::string flavor_name(NormalFormFlavor f) {
    switch (f) {
        case NormalFormFlavor::pd: return "pd";
        case NormalFormFlavor::prf: return "prf";
        case NormalFormFlavor::lrf: return "lrf";
    }
    return "?";
}

std::vector<Scalar> field_to_coords(const PolyVectorField& f,
                                    const std::vector<MonomialIndex>& basis) {
    std::map<MonomialIndex, int, MonomialOrder> pos;
    for (std::size_t i = 0; i < basis.size(); ++i) pos.emplace(basis[i], static_cast<int>(i));
    std::vector<Scalar> coords(basis.size());
    for (const auto& [mi, c] : f.terms()) {
        auto it = pos.find(mi);
        if (it == pos.end())
            throw std::invalid_argument("field_to_coords: term outside the basis span");
        coords[it->second] = c;
    }
    return coords;
}

PolyVectorField coords_to_field(const std::vector<Scalar>& coords,
                                const std::vector<MonomialIndex>& basis, int n, int trunc) {
    if (coords.size() != basis.size()) throw std::invalid_argument("coords_to_field: size mismatch");
    PolyVectorField f(n, trunc);
    for (std::size_t i = 0; i < basis.size(); ++i) f.add_term(basis[i], coords[i]);
    return f;
}

namespace {
SubspaceBasis monomial_subspace(const std::vector<MonomialIndex>& monos, int n, int trunc,
                                std::string tag) {
    SubspaceBasis b;
    b.tag = std::move(tag);
    for (const auto& mi : monos) {
        PolyVectorField v(n, trunc);
        v.add_term(mi, Scalar(1));
        b.vectors.push_back(std::move(v));
    }
    return b;
}

void validate_linear_part(const PolyVectorField& f, const Eigenvalues& lambda) {
    const int n = f.dimension();
    if (static_cast<int>(lambda.size()) != n)
        throw std::invalid_argument("normalizer: eigenvalue count does not match dimension");
    if (f.min_grade() != -2 && f.min_grade() < 0)
        throw std::invalid_argument("normalizer: field has constant terms");
    PolyVectorField lin = PolyVectorField::linear(lambda, f.truncation());
    if (!(f.grade_component(0) == lin.grade_component(0)))
        throw std::invalid_argument("normalizer: linear part is not diag(lambda) x");
}
}  // namespace

OperatorMatrix l0_matrix(const Eigenvalues& lambda, int k) {
    if (k < 1) throw std::invalid_argument("l0_matrix: k must be >= 1");
    const int n = static_cast<int>(lambda.size());
    OperatorMatrix om;
    om.codomain = monomial_basis(n, k);
    om.domain = monomial_subspace(om.codomain, n, k, "V_" + std::to_string(k));
    const int d = static_cast<int>(om.codomain.size());
    om.entries = ScalarMatrix(d, d);
    for (int i = 0; i < d; ++i) om.entries.at(i, i) = resonance_value(lambda, om.codomain[i]);
    return om;
}

std::vector<ResonanceRelation> resonances(const Eigenvalues& lambda, int kmax) {
    if (kmax < 1) throw std::invalid_argument("resonances: kmax must be >= 1");
    const int n = static_cast<int>(lambda.size());
    std::vector<ResonanceRelation> out;
    for (int k = 1; k <= kmax; ++k)
        for (const auto& mi : monomial_basis(n, k))
            if (resonance_value(lambda, mi).is_zero()) out.push_back({mi});
    return out;
}

std::pair<std::optional<Generator>, PolyVectorField> solve_homological(
    const Eigenvalues& lambda, const PolyVectorField& fk) {
    auto gs = fk.grades_present();
    if (gs.size() > 1)
        throw std::invalid_argument("solve_homological: input is not homogeneous");
    const int k = gs.empty() ? 1 : gs[0];
    if (k < 1) throw std::invalid_argument("solve_homological: grade must be >= 1");
    PolyVectorField h(fk.dimension(), fk.truncation());
    PolyVectorField resonant(fk.dimension(), fk.truncation());
    for (const auto& [mi, c] : fk.terms()) {
        Scalar denom = resonance_value(lambda, mi);
        if (denom.is_zero())
            resonant.add_term(mi, c);
        else
            h.add_term(mi, c / denom);
    }
    if (h.is_zero()) return {std::nullopt, resonant};
    return {Generator(h, k, 0), resonant};
}

namespace {
std::vector<MonomialIndex> support(const PolyVectorField& f) {
    std::vector<MonomialIndex> s;
    s.reserve(f.term_count());
    for (const auto& [mi, c] : f.terms()) s.push_back(mi);
    return s;
}

std::vector<MonomialIndex> support_diff(const PolyVectorField& before,
                                        const PolyVectorField& after) {
    std::vector<MonomialIndex> out;
    for (const auto& [mi, c] : before.terms())
        if (after.coefficient(mi).is_zero()) out.push_back(mi);
    return out;
}

void assert_lower_grades_fixed(const PolyVectorField& before, const PolyVectorField& after,
                               int k, const char* where) {
    if (!(before.truncated(k - 1) == after.truncated(k - 1)))
        throw internal_error(std::string(where) + ": stage modified grades below order " +
                             std::to_string(k));
}
}  // namespace

NormalFormResult poincare_dulac(const PolyVectorField& f, const Eigenvalues& lambda, int N) {
    validate_linear_part(f, lambda);
    NormalFormResult res;
    res.flavor = NormalFormFlavor::pd;
    PolyVectorField cur = f.truncated(N);
    for (int k = 1; k <= N; ++k) {
        PolyVectorField fk = cur.grade_component(k);
        if (fk.is_zero()) continue;
        auto [h, resonant] = solve_homological(lambda, fk);
        StageReport sr;
        sr.k = k;
        sr.p = 0;
        sr.removed = support_diff(fk, resonant);
        sr.kept = support(resonant);
        if (h) {
            PolyVectorField next = push_forward(cur, *h, N);
            assert_lower_grades_fixed(cur, next, k, "poincare_dulac");
            if (!(next.grade_component(k) == resonant))
                throw internal_error("poincare_dulac: homological step left a nonresonant residue");
            cur = next;
            res.generators.items.push_back(*h);
        }
        res.report.push_back(std::move(sr));
    }
    res.normal_form = cur;
    return res;
}

OperatorMatrix higher_operator(const PolyVectorField& fhat_p, const SubspaceBasis& domain) {
    OperatorMatrix om;
    om.domain = domain;
    if (fhat_p.is_zero() || domain.empty()) {
        om.entries = ScalarMatrix(0, static_cast<int>(domain.size()));
        return om;
    }
    auto gs = fhat_p.grades_present();
    if (gs.size() != 1) throw std::invalid_argument("higher_operator: fhat_p is not homogeneous");
    const int p = gs[0];
    const int g = domain.grade();
    for (const auto& v : domain.vectors)
        if (v.grades_present() != std::vector<int>{g})
            throw std::invalid_argument("higher_operator: domain vectors have mixed grades");
    const int k = p + g;
    om.codomain = monomial_basis(fhat_p.dimension(), k);
    const PolyVectorField lifted = fhat_p.truncated(std::max(k, fhat_p.truncation()));
    std::vector<std::vector<Scalar>> cols;
    cols.reserve(domain.size());
    for (const auto& v : domain.vectors)
        cols.push_back(field_to_coords(bracket(lifted, v.truncated(k)), om.codomain));
    om.entries = cols.empty() ? ScalarMatrix(static_cast<int>(om.codomain.size()), 0)
                              : ScalarMatrix::from_columns(cols);
    return om;
}

SubspaceBasis nested_kernel_basis(const Eigenvalues& lambda,
                                  const std::vector<PolyVectorField>& finalized, int p, int g) {
    const int n = static_cast<int>(lambda.size());
    std::string tag = "H^(" + std::to_string(p) + ") cap V_" + std::to_string(g);
    if (p == 0) return monomial_subspace(monomial_basis(n, g), n, g, tag);

    // stage 0 kernel: resonant monomials of V_g
    std::vector<MonomialIndex> res_monos;
    for (const auto& mi : monomial_basis(n, g))
        if (resonance_value(lambda, mi).is_zero()) res_monos.push_back(mi);
    SubspaceBasis basis = monomial_subspace(res_monos, n, g, tag);

    for (int s = 1; s < p && !basis.empty(); ++s) {
        if (s >= static_cast<int>(finalized.size()) || finalized[s].is_zero()) continue;
        OperatorMatrix ls = higher_operator(finalized[s], basis);
        ScalarMatrix ker = nullspace(ls.entries);
        std::vector<PolyVectorField> next;
        for (int j = 0; j < ker.cols(); ++j) {
            PolyVectorField v(n, g);
            for (int i = 0; i < ker.rows(); ++i)
                v = v + basis.vectors[i].scaled(ker.at(i, j));
            next.push_back(std::move(v));
        }
        basis.vectors = std::move(next);
    }
    return basis;
}

std::pair<std::optional<Generator>, PolyVectorField> solve_higher(const OperatorMatrix& M,
                                                                  const PolyVectorField& target) {
    if (M.domain.empty() || M.entries.rows() == 0 || target.is_zero())
        return {std::nullopt, target};
    std::vector<Scalar> t = field_to_coords(target, M.codomain);
    std::vector<Scalar> weights;
    weights.reserve(M.codomain.size());
    for (const auto& mi : M.codomain) weights.push_back(Scalar(Rational(monomial_factorial(mi))));
    std::vector<Scalar> x = lstsq_weighted(M.entries, weights, t);

    PolyVectorField h(target.dimension(), target.truncation());
    for (std::size_t j = 0; j < x.size(); ++j)
        if (!x[j].is_zero())
            h = h + M.domain.vectors[j].truncated(target.truncation()).scaled(x[j]);
    std::vector<Scalar> mx = M.entries.apply(x);
    std::vector<Scalar> r(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) r[i] = t[i] - mx[i];
    PolyVectorField residual =
        coords_to_field(r, M.codomain, target.dimension(), target.truncation());
    if (h.is_zero()) return {std::nullopt, residual};

    const int k = M.codomain.front().grade();
    const int g = M.domain.grade();
    return {Generator(h, k, k - g), residual};
}

NormalFormResult prf(const PolyVectorField& f, const Eigenvalues& lambda, int N) {
    validate_linear_part(f, lambda);
    NormalFormResult res;
    res.flavor = NormalFormFlavor::prf;
    PolyVectorField cur = f.truncated(N);
    std::vector<PolyVectorField> finalized(N + 1, PolyVectorField(f.dimension(), N));

    for (int k = 1; k <= N; ++k) {
        // stage 0: classical homological step (a no-op for zero linear part)
        PolyVectorField fk = cur.grade_component(k);
        if (!fk.is_zero()) {
            auto [h, resonant] = solve_homological(lambda, fk);
            StageReport sr;
            sr.k = k;
            sr.p = 0;
            sr.removed = support_diff(fk, resonant);
            sr.kept = support(resonant);
            if (h) {
                PolyVectorField next = push_forward(cur, *h, N);
                assert_lower_grades_fixed(cur, next, k, "prf");
                if (!(next.grade_component(k) == resonant))
                    throw internal_error("prf: homological step left a nonresonant residue");
                cur = next;
                res.generators.items.push_back(*h);
            }
            res.report.push_back(std::move(sr));
        }
        // higher stages p = 1..k-1 with generators of grade k-p from H^(p)
        for (int p = 1; p <= k - 1; ++p) {
            if (finalized[p].is_zero()) continue;
            PolyVectorField target = cur.grade_component(k);
            if (target.is_zero()) break;
            SubspaceBasis domain = nested_kernel_basis(lambda, finalized, p, k - p);
            if (domain.empty()) continue;
            OperatorMatrix M = higher_operator(finalized[p], domain);
            auto [h, residual] = solve_higher(M, target);
            if (!h) continue;
            PolyVectorField next = push_forward(cur, *h, N);
            assert_lower_grades_fixed(cur, next, k, "prf");
            if (!(next.grade_component(k) == residual))
                throw internal_error("prf: higher stage disagrees with its predicted residual");
            StageReport sr;
            sr.k = k;
            sr.p = p;
            sr.removed = support_diff(target, residual);
            sr.kept = support(residual);
            cur = next;
            res.generators.items.push_back(*h);
            res.report.push_back(std::move(sr));
        }
        finalized[k] = cur.grade_component(k);
    }
    res.normal_form = cur;
    return res;
}

CheckReport check_form(const NormalFormResult& result, const Eigenvalues& lambda, int N) {
    CheckReport rep;
    const PolyVectorField& nf = result.normal_form;
    std::vector<PolyVectorField> finalized(N + 1, PolyVectorField(nf.dimension(), N));
    for (int k = 1; k <= N; ++k) finalized[k] = nf.grade_component(k);

    for (int k = 1; k <= N; ++k) {
        GradeCheck gc;
        gc.k = k;
        PolyVectorField fk = finalized[k];
        // Ker(L0^+) membership: only resonant monomials (all flavors)
        for (const auto& [mi, c] : fk.terms())
            if (!resonance_value(lambda, mi).is_zero()) gc.offending.push_back(mi);
        // PRF flavor additionally requires orthogonality to Ran(M_p)
        if (result.flavor == NormalFormFlavor::prf && gc.offending.empty() && !fk.is_zero()) {
            for (int p = 1; p <= k - 1; ++p) {
                if (finalized[p].is_zero()) continue;
                SubspaceBasis domain = nested_kernel_basis(lambda, finalized, p, k - p);
                if (domain.empty()) continue;
                OperatorMatrix M = higher_operator(finalized[p], domain);
                if (M.entries.rows() == 0 || M.entries.cols() == 0) continue;
                auto [h, residual] = solve_higher(M, fk);
                if (h) {  // a removable component remains
                    for (const auto& mi : support_diff(fk, residual)) gc.offending.push_back(mi);
                    PolyVectorField diff = fk - residual;
                    for (const auto& [mi, c] : diff.terms()) gc.offending.push_back(mi);
                    break;
                }
            }
        }
        std::sort(gc.offending.begin(), gc.offending.end(),
                  [](const MonomialIndex& a, const MonomialIndex& b) { return MonomialOrder{}(a, b); });
        gc.offending.erase(std::unique(gc.offending.begin(), gc.offending.end()),
                           gc.offending.end());
        gc.ok = gc.offending.empty();
        rep.ok = rep.ok && gc.ok;
        rep.grades.push_back(std::move(gc));
    }
    return rep;
}

}  // namespace renorm
