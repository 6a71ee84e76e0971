#include "renorm/field.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace renorm {

PolyVectorField PolyVectorField::linear(const std::vector<Scalar>& lambda, int trunc) {
    PolyVectorField f(static_cast<int>(lambda.size()), trunc);
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        std::vector<int> m(lambda.size(), 0);
        m[i] = 1;
        f.add_term(MonomialIndex(m, static_cast<int>(i)), lambda[i]);
    }
    return f;
}

void PolyVectorField::add_term(const MonomialIndex& mi, const Scalar& c) {
    if (static_cast<int>(mi.m.size()) != n_)
        throw std::invalid_argument("PolyVectorField: exponent vector length mismatch");
    if (mi.dir < 0 || mi.dir >= n_)
        throw std::invalid_argument("PolyVectorField: direction out of range");
    for (int e : mi.m)
        if (e < 0) throw std::invalid_argument("PolyVectorField: negative exponent");
    if (c.is_zero()) return;
    if (mi.grade() > trunc_) return;  // silent truncation above N
    auto [it, inserted] = terms_.emplace(mi, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

PolyVectorField PolyVectorField::operator+(const PolyVectorField& o) const {
    if (n_ != o.n_) throw std::invalid_argument("PolyVectorField: dimension mismatch");
    PolyVectorField r(n_, std::min(trunc_, o.trunc_));
    for (const auto& [mi, c] : terms_) r.add_term(mi, c);
    for (const auto& [mi, c] : o.terms_) r.add_term(mi, c);
    return r;
}

PolyVectorField PolyVectorField::operator-(const PolyVectorField& o) const {
    if (n_ != o.n_) throw std::invalid_argument("PolyVectorField: dimension mismatch");
    PolyVectorField r(n_, std::min(trunc_, o.trunc_));
    for (const auto& [mi, c] : terms_) r.add_term(mi, c);
    for (const auto& [mi, c] : o.terms_) r.add_term(mi, -c);
    return r;
}

PolyVectorField PolyVectorField::operator-() const {
    PolyVectorField r(n_, trunc_);
    for (const auto& [mi, c] : terms_) r.terms_.emplace(mi, -c);
    return r;
}

PolyVectorField PolyVectorField::scaled(const Scalar& c) const {
    PolyVectorField r(n_, trunc_);
    if (c.is_zero()) return r;
    for (const auto& [mi, v] : terms_) {
        Scalar p = v * c;
        if (!p.is_zero()) r.terms_.emplace(mi, p);
    }
    return r;
}

PolyVectorField PolyVectorField::grade_component(int k) const {
    PolyVectorField r(n_, trunc_);
    for (const auto& [mi, c] : terms_)
        if (mi.grade() == k) r.terms_.emplace(mi, c);
    return r;
}

PolyVectorField PolyVectorField::truncated(int nmax) const {
    PolyVectorField r(n_, nmax);
    for (const auto& [mi, c] : terms_)
        if (mi.grade() <= nmax) r.terms_.emplace(mi, c);
    return r;
}

PolyVectorField PolyVectorField::to_floating() const {
    PolyVectorField r(n_, trunc_);
    for (const auto& [mi, c] : terms_) {
        Scalar f = c.to_floating();
        if (!f.is_zero()) r.terms_.emplace(mi, f);
    }
    return r;
}

int PolyVectorField::min_grade() const {
    if (terms_.empty()) return -2;
    return terms_.begin()->first.grade();  // map is graded-ordered
}

int PolyVectorField::max_grade() const {
    if (terms_.empty()) return -2;
    return terms_.rbegin()->first.grade();
}

std::vector<int> PolyVectorField::grades_present() const {
    std::vector<int> gs;
    for (const auto& [mi, c] : terms_) {
        int g = mi.grade();
        if (gs.empty() || gs.back() != g) gs.push_back(g);
    }
    return gs;
}

std::string PolyVectorField::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mi, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (int i = 0; i < n_; ++i) {
            if (mi.m[i] == 0) continue;
            os << "*x" << (i + 1);
            if (mi.m[i] > 1) os << "^" << mi.m[i];
        }
        os << " e" << (mi.dir + 1);
    }
    return os.str();
}

}  // namespace renorm
