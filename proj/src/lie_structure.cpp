#include "renorm/lie_structure.hpp"

#include <algorithm>

#include "renorm/algebra.hpp"

namespace renorm {

namespace {
std::vector<Scalar> flatten(const ScalarMatrix& m) {
    std::vector<Scalar> v;
    v.reserve(m.rows() * m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
    return v;
}

ScalarMatrix commutator(const ScalarMatrix& a, const ScalarMatrix& b) {
    return a * b - b * a;
}

bool in_span(const std::vector<std::vector<Scalar>>& span_vecs, const std::vector<Scalar>& v) {
    if (span_vecs.empty()) {
        for (const auto& s : v)
            if (!s.is_zero()) return false;
        return true;
    }
    ScalarMatrix m = ScalarMatrix::from_columns(span_vecs);
    int r0 = rank(m);
    auto with = span_vecs;
    with.push_back(v);
    return rank(ScalarMatrix::from_columns(with)) == r0;
}
}  // namespace

CentralizerBasis centralizer_basis(const Eigenvalues& lambda) {
    const int n = static_cast<int>(lambda.size());
    CentralizerBasis cb;
    cb.n = n;

    // elementary matrices allowed in the centralizer: E_ij with l_i = l_j
    std::vector<ScalarMatrix> candidates;
    ScalarMatrix id = ScalarMatrix::identity(n);
    ScalarMatrix a(n, n);
    bool a_nonzero = false;
    for (int i = 0; i < n; ++i) {
        a.at(i, i) = lambda[i];
        if (!lambda[i].is_zero()) a_nonzero = true;
    }
    candidates.push_back(id);
    if (a_nonzero) candidates.push_back(a);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if ((lambda[i] - lambda[j]).is_zero()) {
                ScalarMatrix e(n, n);
                e.at(i, j) = Scalar(1);
                candidates.push_back(e);
            }

    std::vector<std::vector<Scalar>> picked;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        auto flat = flatten(candidates[c]);
        if (in_span(picked, flat)) {
            if (a_nonzero && c == 1) cb.includes_A = false;  // A dependent on I
            continue;
        }
        picked.push_back(flat);
        cb.mats.push_back(candidates[c]);
        if (a_nonzero && c == 1) cb.includes_A = true;
    }
    return cb;
}

InvariantSet invariant_monomials(const Eigenvalues& lambda, int deg_cap) {
    if (deg_cap < 1) throw std::invalid_argument("invariant_monomials: cap must be >= 1");
    const int n = static_cast<int>(lambda.size());
    InvariantSet inv;
    inv.cap = deg_cap;
    bool has_zero = false;
    for (const auto& l : lambda)
        if (l.is_zero()) has_zero = true;
    for (int d = has_zero ? 1 : 2; d <= deg_cap; ++d) {
        // reuse the monomial enumeration; direction 0 slice gives each
        // exponent vector exactly once, in canonical order
        for (const auto& mi : monomial_basis(n, d - 1)) {
            if (mi.dir != 0) continue;
            Scalar acc = lambda[0].is_exact() ? Scalar(0) : Scalar::floating(0.0);
            for (int s = 0; s < n; ++s)
                if (mi.m[s] != 0) acc += Scalar(mi.m[s]) * lambda[s];
            if (acc.is_zero()) inv.exponents.push_back(mi.m);
        }
    }
    return inv;
}

PolyVectorField module_field(const std::vector<int>& exps, const ScalarMatrix& K, int trunc) {
    const int n = K.rows();
    PolyVectorField f(n, trunc);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (K.at(i, j).is_zero()) continue;
            std::vector<int> m = exps;
            m[j] += 1;
            f.add_term(MonomialIndex(m, i), K.at(i, j));
        }
    return f;
}

namespace {
// Candidate invariant exponents of exact degree d (degree 0 = the constant).
std::vector<std::vector<int>> invariant_exponents_of_degree(const InvariantSet& inv, int n, int d) {
    std::vector<std::vector<int>> out;
    if (d == 0) {
        out.push_back(std::vector<int>(n, 0));
        return out;
    }
    for (const auto& e : inv.exponents) {
        int s = 0;
        for (int v : e) s += v;
        if (s == d) out.push_back(e);
    }
    return out;
}
}  // namespace

ModuleDecomposition module_decompose(const PolyVectorField& W, const CentralizerBasis& basis,
                                     const InvariantSet& inv) {
    const int n = W.dimension();
    if (basis.n != n) throw std::invalid_argument("module_decompose: dimension mismatch");
    if (W.max_grade() > inv.cap)
        throw std::invalid_argument("module_decompose: invariant cap below the field's top grade");
    ModuleDecomposition md;
    for (int k : W.grades_present()) {
        if (k < 0) throw std::invalid_argument("module_decompose: field has constant terms");
        PolyVectorField wk = W.grade_component(k);
        GradeDecomposition gd;
        gd.k = k;
        auto exps = invariant_exponents_of_degree(inv, n, k);
        auto monos = monomial_basis(n, k);
        std::vector<std::vector<Scalar>> cols;
        std::vector<std::pair<int, std::vector<int>>> labels;  // (alpha, exponents)
        for (std::size_t alpha = 0; alpha < basis.size(); ++alpha)
            for (const auto& e : exps) {
                cols.push_back(
                    field_to_coords(module_field(e, basis.mats[alpha], k), monos));
                labels.emplace_back(static_cast<int>(alpha), e);
            }
        std::optional<std::vector<Scalar>> sol;
        if (!cols.empty())
            sol = solve_pivot(ScalarMatrix::from_columns(cols), field_to_coords(wk, monos));
        gd.ok = sol.has_value();
        if (gd.ok) {
            for (std::size_t alpha = 0; alpha < basis.size(); ++alpha)
                gd.coeff.push_back(ScalarPoly(n, std::max(k, 0)));
            for (std::size_t j = 0; j < labels.size(); ++j)
                if (!(*sol)[j].is_zero())
                    gd.coeff[labels[j].first].add_term(labels[j].second, (*sol)[j]);
        } else {
            md.quasi_linear = false;
            if (md.first_failing_grade < 0) md.first_failing_grade = k;
        }
        md.per_grade.push_back(std::move(gd));
    }
    return md;
}

NilpotentChain chain_from_central_series(const CentralizerBasis& basis) {
    NilpotentChain chain;
    const std::size_t d = basis.size();
    std::vector<int> all(d);
    for (std::size_t i = 0; i < d; ++i) all[i] = static_cast<int>(i);

    // current subalgebra as flattened spanning vectors
    std::vector<std::vector<Scalar>> cur;
    for (const auto& m : basis.mats) cur.push_back(flatten(m));
    chain.series.push_back(all);

    const int max_steps = basis.n * basis.n + 2;
    for (int step = 0; step < max_steps; ++step) {
        // next = [G, cur]
        std::vector<std::vector<Scalar>> next;
        for (const auto& g : basis.mats)
            for (const auto& cflat : cur) {
                // rebuild matrix from flat vector
                ScalarMatrix cm(basis.n, basis.n);
                for (int i = 0; i < basis.n; ++i)
                    for (int j = 0; j < basis.n; ++j) cm.at(i, j) = cflat[i * basis.n + j];
                auto br = flatten(commutator(g, cm));
                if (!in_span(next, br)) next.push_back(br);
            }
        int dim_next = static_cast<int>(next.size());
        int dim_cur = static_cast<int>(cur.size());
        // express next as a subset of the original basis
        std::vector<int> idx;
        for (std::size_t alpha = 0; alpha < d; ++alpha)
            if (in_span(next, flatten(basis.mats[alpha]))) idx.push_back(static_cast<int>(alpha));
        std::vector<std::vector<Scalar>> sub;
        for (int alpha : idx) sub.push_back(flatten(basis.mats[alpha]));
        bool aligned =
            dim_next == 0 ||
            (!sub.empty() && rank(ScalarMatrix::from_columns(sub)) == dim_next);
        if (!aligned) {
            chain.representable = false;
            break;
        }
        chain.series.push_back(idx);
        if (dim_next == 0) break;
        if (dim_next == dim_cur) {
            chain.terminates = false;
            break;
        }
        cur = std::move(next);
        if (step + 1 == max_steps) chain.terminates = false;
    }

    for (std::size_t p = 0; p + 1 < chain.series.size(); ++p) {
        std::vector<int> gamma;
        const auto& lower = chain.series[p + 1];
        for (int a : chain.series[p])
            if (std::find(lower.begin(), lower.end(), a) == lower.end()) gamma.push_back(a);
        chain.factors.push_back(std::move(gamma));
    }
    return chain;
}

namespace {
// alpha-component of a homogeneous resonant field, or nullopt when the
// field is outside the module span.
struct FactorSplit {
    std::vector<PolyVectorField> parts;  // one per basis matrix
};

std::optional<FactorSplit> split_by_factor(const PolyVectorField& wk, const CentralizerBasis& basis,
                                           const InvariantSet& inv) {
    if (wk.is_zero()) {
        FactorSplit fs;
        for (std::size_t a = 0; a < basis.size(); ++a)
            fs.parts.push_back(PolyVectorField(basis.n, wk.truncation()));
        return fs;
    }
    ModuleDecomposition md = module_decompose(wk, basis, inv);
    if (!md.quasi_linear) return std::nullopt;
    FactorSplit fs;
    for (std::size_t a = 0; a < basis.size(); ++a) {
        PolyVectorField part(basis.n, wk.truncation());
        for (const auto& gd : md.per_grade)
            for (const auto& [e, c] : gd.coeff[a].terms())
                part = part + module_field(e, basis.mats[a], wk.truncation()).scaled(c);
        fs.parts.push_back(std::move(part));
    }
    return fs;
}
}  // namespace

NormalFormResult lrf(const PolyVectorField& f, const Eigenvalues& lambda, int N) {
    NormalFormResult res = poincare_dulac(f, lambda, N);
    res.flavor = NormalFormFlavor::lrf;

    CentralizerBasis basis = centralizer_basis(lambda);
    InvariantSet inv = invariant_monomials(lambda, std::max(N, 1));
    const int n = static_cast<int>(lambda.size());

    // quasi-linearity of the PD normal form (nonlinear grades)
    PolyVectorField nonlinear = res.normal_form - PolyVectorField::linear(lambda, N);
    ModuleDecomposition md = module_decompose(nonlinear, basis, inv);
    if (!md.quasi_linear)
        throw method_inapplicable("lrf: field is not quasi-linear at grade " +
                                      std::to_string(md.first_failing_grade),
                                  md.first_failing_grade);

    NilpotentChain chain = chain_from_central_series(basis);
    if (!chain.terminates || !chain.representable)
        throw method_inapplicable("lrf: centralizer central series does not terminate in zero");

    // processing order: factors in chain order, basis order inside each
    std::vector<int> order;
    for (const auto& gamma : chain.factors)
        for (int a : gamma) order.push_back(a);

    PolyVectorField cur = res.normal_form;
    std::vector<bool> done(basis.size(), false);

    auto factor_parts = [&](const PolyVectorField& field) {
        PolyVectorField nl = field - PolyVectorField::linear(lambda, N);
        auto fs = split_by_factor(nl, basis, inv);
        if (!fs)
            throw method_inapplicable("lrf: intermediate field left the invariant module");
        return *fs;
    };

    for (int alpha : order) {
        for (int k = 1; k <= N; ++k) {
            for (int p = 1; p <= k - 1; ++p) {
                PolyVectorField wp = cur.grade_component(p);
                if (wp.is_zero()) continue;
                FactorSplit parts = factor_parts(cur);
                PolyVectorField target = parts.parts[alpha].grade_component(k);
                if (target.is_zero()) break;

                const int g = k - p;
                auto gen_exps = invariant_exponents_of_degree(inv, n, g);
                if (gen_exps.empty()) continue;
                std::vector<PolyVectorField> cand;
                for (const auto& e : gen_exps)
                    cand.push_back(module_field(e, basis.mats[alpha], N));

                // kernel conditions: the alpha-part of {v, W_s} must vanish
                // for 1 <= s < p so finalized alpha-grades stay fixed
                auto alpha_part_of_bracket = [&](const PolyVectorField& v,
                                                 const PolyVectorField& ws) {
                    PolyVectorField b = bracket(v, ws);
                    if (b.is_zero()) return b;
                    auto fs = split_by_factor(b, basis, inv);
                    if (!fs)
                        throw method_inapplicable(
                            "lrf: bracket left the invariant module during reduction");
                    return fs->parts[alpha];
                };
                std::vector<std::vector<Scalar>> constraint_cols(cand.size());
                bool constrained = false;
                for (int s = 1; s < p; ++s) {
                    PolyVectorField ws = cur.grade_component(s);
                    if (ws.is_zero()) continue;
                    constrained = true;
                    auto monos = monomial_basis(n, s + g);
                    for (std::size_t j = 0; j < cand.size(); ++j) {
                        auto col = field_to_coords(alpha_part_of_bracket(cand[j], ws), monos);
                        constraint_cols[j].insert(constraint_cols[j].end(), col.begin(), col.end());
                    }
                }
                std::vector<PolyVectorField> domain;
                if (constrained) {
                    ScalarMatrix cm = ScalarMatrix::from_columns(constraint_cols);
                    ScalarMatrix ker = nullspace(cm);
                    for (int j = 0; j < ker.cols(); ++j) {
                        PolyVectorField v(n, N);
                        for (int i = 0; i < ker.rows(); ++i) v = v + cand[i].scaled(ker.at(i, j));
                        domain.push_back(std::move(v));
                    }
                } else {
                    domain = cand;
                }
                if (domain.empty()) continue;

                // operator: v -> alpha-part of {W_p, v} into V_k coordinates
                auto monos_k = monomial_basis(n, k);
                std::vector<std::vector<Scalar>> cols;
                for (const auto& v : domain) {
                    PolyVectorField b = bracket(wp, v);
                    PolyVectorField ab(n, N);
                    if (!b.is_zero()) {
                        auto fs = split_by_factor(b, basis, inv);
                        if (!fs)
                            throw method_inapplicable(
                                "lrf: bracket left the invariant module during reduction");
                        ab = fs->parts[alpha];
                    }
                    cols.push_back(field_to_coords(ab, monos_k));
                }
                ScalarMatrix M = ScalarMatrix::from_columns(cols);
                if (M.is_zero()) continue;
                std::vector<Scalar> weights;
                for (const auto& mi : monos_k)
                    weights.push_back(Scalar(Rational(monomial_factorial(mi))));
                std::vector<Scalar> x =
                    lstsq_weighted(M, weights, field_to_coords(target, monos_k));
                PolyVectorField h(n, N);
                for (std::size_t j = 0; j < x.size(); ++j)
                    if (!x[j].is_zero()) h = h + domain[j].scaled(x[j]);
                if (h.is_zero()) continue;

                Generator gen(h, k, p);
                PolyVectorField next = push_forward(cur, gen, N);

                // guarantees: completed factors untouched anywhere, and the
                // current factor fixed below this order
                FactorSplit before = factor_parts(cur);
                FactorSplit after = factor_parts(next);
                for (std::size_t a = 0; a < basis.size(); ++a)
                    if (done[a] && !(before.parts[a] == after.parts[a]))
                        throw method_inapplicable(
                            "lrf: reduction disturbed an already-finalized factor");
                if (!(before.parts[alpha].truncated(k - 1) ==
                      after.parts[alpha].truncated(k - 1)))
                    throw method_inapplicable(
                        "lrf: reduction disturbed finalized grades of the working factor");

                StageReport sr;
                sr.k = k;
                sr.p = p;
                PolyVectorField after_target = after.parts[alpha].grade_component(k);
                sr.removed = [&] {
                    std::vector<MonomialIndex> out;
                    for (const auto& [mi, c] : target.terms())
                        if (after_target.coefficient(mi).is_zero()) out.push_back(mi);
                    return out;
                }();
                for (const auto& [mi, c] : after_target.terms()) sr.kept.push_back(mi);
                res.report.push_back(std::move(sr));
                res.generators.items.push_back(gen);
                cur = next;
            }
        }
        done[alpha] = true;
    }

    res.normal_form = cur;
    return res;
}

}  // namespace renorm
