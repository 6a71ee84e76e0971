#include "renorm/polymap.hpp"

#include <stdexcept>

namespace renorm {

namespace {
int vec_degree(const std::vector<int>& e) {
    int s = 0;
    for (int v : e) s += v;
    return s;
}
}  // namespace

ScalarPoly ScalarPoly::constant(int n, const Scalar& c, int max_deg) {
    ScalarPoly p(n, max_deg);
    p.add_term(std::vector<int>(n, 0), c);
    return p;
}

ScalarPoly ScalarPoly::variable(int n, int i, int max_deg) {
    ScalarPoly p(n, max_deg);
    std::vector<int> e(n, 0);
    e[i] = 1;
    p.add_term(e, Scalar(1));
    return p;
}

int ScalarPoly::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, vec_degree(e));
    return d;
}

void ScalarPoly::add_term(const std::vector<int>& exps, const Scalar& c) {
    if (static_cast<int>(exps.size()) != n_)
        throw std::invalid_argument("ScalarPoly: exponent vector length mismatch");
    if (c.is_zero() || vec_degree(exps) > max_deg_) return;
    auto [it, inserted] = terms_.emplace(exps, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Scalar ScalarPoly::coefficient(const std::vector<int>& exps) const {
    auto it = terms_.find(exps);
    return it == terms_.end() ? Scalar() : it->second;
}

ScalarPoly ScalarPoly::operator+(const ScalarPoly& o) const {
    ScalarPoly r(n_, std::min(max_deg_, o.max_deg_));
    for (const auto& [e, c] : terms_) r.add_term(e, c);
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

ScalarPoly ScalarPoly::operator-(const ScalarPoly& o) const {
    ScalarPoly r(n_, std::min(max_deg_, o.max_deg_));
    for (const auto& [e, c] : terms_) r.add_term(e, c);
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

ScalarPoly ScalarPoly::operator*(const ScalarPoly& o) const {
    ScalarPoly r(n_, std::min(max_deg_, o.max_deg_));
    std::vector<int> e(n_);
    for (const auto& [ea, ca] : terms_) {
        int da = vec_degree(ea);
        for (const auto& [eb, cb] : o.terms_) {
            if (da + vec_degree(eb) > r.max_deg_) continue;
            for (int i = 0; i < n_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

ScalarPoly ScalarPoly::scaled(const Scalar& c) const {
    ScalarPoly r(n_, max_deg_);
    if (c.is_zero()) return r;
    for (const auto& [e, v] : terms_) {
        Scalar p = v * c;
        if (!p.is_zero()) r.terms_.emplace(e, p);
    }
    return r;
}

ScalarPoly ScalarPoly::pow(int p) const {
    ScalarPoly r = constant(n_, Scalar(1), max_deg_);
    for (int i = 0; i < p; ++i) r = r * *this;
    return r;
}

ScalarPoly ScalarPoly::derivative(int i) const {
    ScalarPoly r(n_, max_deg_);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        std::vector<int> d = e;
        d[i] -= 1;
        r.add_term(d, c * Scalar(e[i]));
    }
    return r;
}

ScalarPoly ScalarPoly::truncated(int max_deg) const {
    ScalarPoly r(n_, max_deg);
    for (const auto& [e, c] : terms_)
        if (vec_degree(e) <= max_deg) r.terms_.emplace(e, c);
    return r;
}

ScalarPoly ScalarPoly::compose(const std::vector<ScalarPoly>& subs) const {
    if (static_cast<int>(subs.size()) != n_)
        throw std::invalid_argument("ScalarPoly::compose: substitution count mismatch");
    int m = subs.empty() ? 0 : subs[0].dimension();
    ScalarPoly r(m, max_deg_);
    for (const auto& [e, c] : terms_) {
        ScalarPoly t = constant(m, c, max_deg_);
        for (int i = 0; i < n_ && !t.is_zero(); ++i)
            if (e[i] > 0) t = t * subs[i].pow(e[i]);
        r = r + t;
    }
    return r;
}

std::complex<double> ScalarPoly::evaluate(const std::vector<std::complex<double>>& x) const {
    if (static_cast<int>(x.size()) != n_)
        throw std::invalid_argument("ScalarPoly::evaluate: point dimension mismatch");
    std::complex<double> acc = 0.0;
    for (const auto& [e, c] : terms_) {
        std::complex<double> t = c.to_complex();
        for (int i = 0; i < n_; ++i)
            for (int p = 0; p < e[i]; ++p) t *= x[i];
        acc += t;
    }
    return acc;
}

PolyMap PolyMap::identity(int n, int max_deg) {
    PolyMap s;
    s.comp.reserve(n);
    for (int i = 0; i < n; ++i) s.comp.push_back(ScalarPoly::variable(n, i, max_deg));
    return s;
}

std::vector<std::complex<double>> PolyMap::evaluate(const std::vector<std::complex<double>>& x) const {
    std::vector<std::complex<double>> y;
    y.reserve(comp.size());
    for (const auto& p : comp) y.push_back(p.evaluate(x));
    return y;
}

ScalarPoly field_component_poly(const PolyVectorField& f, int r, int max_deg) {
    ScalarPoly p(f.dimension(), max_deg);
    for (const auto& [mi, c] : f.terms())
        if (mi.dir == r) p.add_term(mi.m, c);
    return p;
}

PolyVectorField polys_to_field(const std::vector<ScalarPoly>& comps, int nmax) {
    int n = static_cast<int>(comps.size());
    PolyVectorField f(n, nmax);
    for (int r = 0; r < n; ++r)
        for (const auto& [e, c] : comps[r].terms()) f.add_term(MonomialIndex(e, r), c);
    return f;
}

}  // namespace renorm
