#include "renorm/algebra.hpp"

#include <algorithm>
#include <stdexcept>

#include "renorm/polymap.hpp"

namespace renorm {

PolyVectorField bracket(const PolyVectorField& phi, const PolyVectorField& psi) {
    const int n = phi.dimension();
    if (n != psi.dimension()) throw std::invalid_argument("bracket: dimension mismatch");
    PolyVectorField r(n, std::min(phi.truncation(), psi.truncation()));

    // (a . grad) b accumulated with sign into r
    auto directional = [&](const PolyVectorField& a, const PolyVectorField& b, int sign) {
        std::vector<int> e(n);
        for (const auto& [am, ac] : a.terms()) {
            for (const auto& [bm, bc] : b.terms()) {
                int i = am.dir;
                if (bm.m[i] == 0) continue;
                for (int s = 0; s < n; ++s) e[s] = am.m[s] + bm.m[s];
                e[i] -= 1;
                Scalar c = ac * bc * Scalar(sign * bm.m[i]);
                r.add_term(MonomialIndex(e, bm.dir), c);
            }
        }
    };
    directional(phi, psi, +1);
    directional(psi, phi, -1);
    return r;
}

Scalar bargmann_inner(const PolyVectorField& v, const PolyVectorField& w) {
    if (v.dimension() != w.dimension())
        throw std::invalid_argument("bargmann_inner: dimension mismatch");
    bool exact = true;
    for (const auto& [mi, c] : v.terms()) exact = exact && c.is_exact();
    for (const auto& [mi, c] : w.terms()) exact = exact && c.is_exact();

    Scalar acc = exact ? Scalar(0) : Scalar::floating(0.0);
    const auto& smaller = v.term_count() <= w.term_count() ? v : w;
    const auto& other = v.term_count() <= w.term_count() ? w : v;
    for (const auto& [mi, c] : smaller.terms()) {
        Scalar oc = other.coefficient(mi);
        if (oc.is_zero()) continue;
        Scalar vc = (&smaller == &v) ? c : oc;
        Scalar wc = (&smaller == &v) ? oc : c;
        Scalar weight = exact ? Scalar(Rational(monomial_factorial(mi)))
                              : Scalar::floating(static_cast<double>(monomial_factorial(mi)));
        acc += vc.conj() * wc * weight;
    }
    return acc;
}

PolyVectorField grade_project(const PolyVectorField& f, int k) { return f.grade_component(k); }

namespace {
void enumerate_exponents(int n, int pos, int remaining, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
    if (pos == n - 1) {
        cur[pos] = remaining;
        out.push_back(cur);
        return;
    }
    for (int e = remaining; e >= 0; --e) {  // higher powers of earlier variables first
        cur[pos] = e;
        enumerate_exponents(n, pos + 1, remaining - e, cur, out);
    }
}
}  // namespace

std::vector<MonomialIndex> monomial_basis(int n, int k) {
    if (n < 1 || k < 0) throw std::invalid_argument("monomial_basis: need n >= 1, k >= 0");
    std::vector<std::vector<int>> exps;
    std::vector<int> cur(n);
    enumerate_exponents(n, 0, k + 1, cur, exps);
    std::vector<MonomialIndex> basis;
    basis.reserve(exps.size() * n);
    for (int r = 0; r < n; ++r)
        for (const auto& e : exps) basis.emplace_back(e, r);
    return basis;
}

std::vector<std::complex<double>> evaluate(const PolyVectorField& f,
                                           const std::vector<std::complex<double>>& x) {
    const int n = f.dimension();
    if (static_cast<int>(x.size()) != n) throw std::invalid_argument("evaluate: point dimension mismatch");
    std::vector<std::complex<double>> y(n, 0.0);
    for (const auto& [mi, c] : f.terms()) {
        std::complex<double> t = c.to_complex();
        for (int i = 0; i < n; ++i)
            for (int p = 0; p < mi.m[i]; ++p) t *= x[i];
        y[mi.dir] += t;
    }
    return y;
}

namespace {
// Permutation swapping each declared pair, identity on real indices.
std::vector<int> pair_permutation(int n, const RealPairStructure& pair) {
    std::vector<int> sigma(n);
    for (int i = 0; i < n; ++i) sigma[i] = i;
    for (auto [i, j] : pair.pairs) {
        if (i < 0 || j < 0 || i >= n || j >= n || i == j)
            throw std::invalid_argument("RealPairStructure: bad pair indices");
        sigma[i] = j;
        sigma[j] = i;
    }
    return sigma;
}
}  // namespace

bool check_reality(const PolyVectorField& f, const RealPairStructure& pair) {
    const int n = f.dimension();
    auto sigma = pair_permutation(n, pair);
    for (const auto& [mi, c] : f.terms()) {
        std::vector<int> pm(n);
        for (int i = 0; i < n; ++i) pm[sigma[i]] = mi.m[i];
        Scalar partner = f.coefficient(MonomialIndex(pm, sigma[mi.dir]));
        if (!(partner - c.conj()).is_zero()) return false;
    }
    return true;
}

namespace {
// Push a planar field through the linear change z = T x:
// G(z) = T F(T^{-1} z), all entries exact Gaussian rationals.
PolyVectorField linear_change(const PolyVectorField& f, const std::vector<std::vector<Scalar>>& T,
                              const std::vector<std::vector<Scalar>>& Tinv) {
    const int n = f.dimension();
    const int cap = f.truncation() + 1;
    // substitution x_i = sum_j Tinv[i][j] z_j
    std::vector<ScalarPoly> subs;
    for (int i = 0; i < n; ++i) {
        ScalarPoly s(n, cap);
        for (int j = 0; j < n; ++j) {
            std::vector<int> e(n, 0);
            e[j] = 1;
            s.add_term(e, Tinv[i][j]);
        }
        subs.push_back(s);
    }
    std::vector<ScalarPoly> fx;  // F components composed with T^{-1}
    for (int r = 0; r < n; ++r) fx.push_back(field_component_poly(f, r, cap).compose(subs));
    std::vector<ScalarPoly> g;
    for (int r = 0; r < n; ++r) {
        ScalarPoly acc(n, cap);
        for (int j = 0; j < n; ++j) acc = acc + fx[j].scaled(T[r][j]);
        g.push_back(acc);
    }
    return polys_to_field(g, f.truncation());
}
}  // namespace

PolyVectorField complexify_planar(const PolyVectorField& real_field, const RealPairStructure& pair) {
    if (real_field.dimension() != 2 || pair.pairs.size() != 1 || pair.pairs[0] != std::pair<int, int>{0, 1})
        throw std::invalid_argument("complexify_planar: expected a planar field with pair (1,2)");
    for (const auto& [mi, c] : real_field.terms()) {
        if (c.is_exact() && !(c.exact_value().im == 0))
            throw std::invalid_argument("complexify_planar: input has nonreal coefficients");
        if (!c.is_exact() && std::abs(c.to_complex().imag()) > kFloatZeroTol)
            throw std::invalid_argument("complexify_planar: input has nonreal coefficients");
    }
    // linear part must be the conjugate-pair block [[a,-b],[b,a]]
    auto a00 = real_field.coefficient(MonomialIndex({1, 0}, 0));
    auto a01 = real_field.coefficient(MonomialIndex({0, 1}, 0));
    auto a10 = real_field.coefficient(MonomialIndex({1, 0}, 1));
    auto a11 = real_field.coefficient(MonomialIndex({0, 1}, 1));
    if (!(a00 - a11).is_zero() || !(a01 + a10).is_zero())
        throw std::invalid_argument(
            "complexify_planar: linear part is not block-diagonalizable by the declared pair");

    const Scalar i = Scalar::imaginary_unit();
    const Scalar half = Scalar::exact(Rational(1, 2));
    // z1 = x1 + i x2, z2 = x1 - i x2
    std::vector<std::vector<Scalar>> T{{Scalar(1), i}, {Scalar(1), -i}};
    // x1 = (z1 + z2)/2, x2 = -i (z1 - z2)/2
    std::vector<std::vector<Scalar>> Tinv{{half, half}, {-i * half, i * half}};
    return linear_change(real_field, T, Tinv);
}

PolyVectorField realify_planar(const PolyVectorField& complex_field, const RealPairStructure& pair) {
    if (complex_field.dimension() != 2 || pair.pairs.size() != 1 ||
        pair.pairs[0] != std::pair<int, int>{0, 1})
        throw std::invalid_argument("realify_planar: expected a planar field with pair (1,2)");
    if (!check_reality(complex_field, pair))
        throw std::invalid_argument("realify_planar: field does not respect the reality structure");

    const Scalar i = Scalar::imaginary_unit();
    const Scalar half = Scalar::exact(Rational(1, 2));
    // x = Tc^{-1} z with substitution z = Tc x, the inverse of complexify
    std::vector<std::vector<Scalar>> T{{half, half}, {-i * half, i * half}};
    std::vector<std::vector<Scalar>> Tinv{{Scalar(1), i}, {Scalar(1), -i}};
    PolyVectorField out = linear_change(complex_field, T, Tinv);
    // coefficients must come out exactly real
    PolyVectorField cleaned(out.dimension(), out.truncation());
    for (const auto& [mi, c] : out.terms()) {
        if (c.is_exact()) {
            if (!(c.exact_value().im == 0))
                throw std::logic_error("realify_planar: residual imaginary part");
            cleaned.add_term(mi, c);
        } else {
            auto z = c.to_complex();
            if (std::abs(z.imag()) > kFloatZeroTol)
                throw std::logic_error("realify_planar: residual imaginary part");
            cleaned.add_term(mi, Scalar::floating(z.real()));
        }
    }
    return cleaned;
}

}  // namespace renorm
