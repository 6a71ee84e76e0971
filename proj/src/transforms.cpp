#include "renorm/transforms.hpp"

#include <stdexcept>

namespace renorm {

Generator::Generator(PolyVectorField h, int order_k, int stage_p)
    : field_(std::move(h)), grade_(0), order_k_(order_k), stage_p_(stage_p) {
    auto gs = field_.grades_present();
    if (gs.size() != 1)
        throw std::invalid_argument("Generator: field must be homogeneous of a single grade");
    grade_ = gs[0];
    if (grade_ < 1) throw std::invalid_argument("Generator: grade must be >= 1");
}

PolyVectorField push_forward(const PolyVectorField& f, const Generator& h, int N) {
    if (f.dimension() != h.field().dimension())
        throw std::invalid_argument("push_forward: dimension mismatch");
    const int m = h.grade();
    const PolyVectorField hf = h.field().truncated(N);  // lift any tighter truncation
    PolyVectorField out(f.dimension(), N);
    for (int j : f.grades_present()) {
        if (j > N) break;
        PolyVectorField cur = f.grade_component(j).truncated(N);
        out = out + cur;
        Rational sfact = 1;
        for (int s = 1; j + s * m <= N; ++s) {
            cur = bracket(hf, cur);
            if (cur.is_zero()) break;
            sfact *= s;
            out = out + cur.scaled(Scalar::exact(Rational(1) / sfact));
        }
    }
    return out;
}

PolyMap truncated_flow_map(const Generator& h, int N) {
    const int n = h.field().dimension();
    const int cap = N + 1;
    // Lie series on coordinate functions: x_i(1) = sum_s (1/s!) H^s(y_i)
    // with H the derivation g -> h . grad g; terminates under the cap.
    std::vector<ScalarPoly> hcomp;
    for (int i = 0; i < n; ++i) hcomp.push_back(field_component_poly(h.field(), i, cap));
    auto derivation = [&](const ScalarPoly& g) {
        ScalarPoly acc(n, cap);
        for (int i = 0; i < n; ++i) acc = acc + hcomp[i] * g.derivative(i);
        return acc;
    };
    PolyMap S;
    for (int i = 0; i < n; ++i) {
        ScalarPoly term = ScalarPoly::variable(n, i, cap);
        ScalarPoly acc = term;
        Rational sfact = 1;
        for (int s = 1; !term.is_zero(); ++s) {
            term = derivation(term);
            sfact *= s;
            acc = acc + term.scaled(Scalar::exact(Rational(1) / sfact));
        }
        S.comp.push_back(acc);
    }
    return S;
}

PolyVectorField push_forward_substitution_oracle(const PolyVectorField& f, const Generator& h,
                                                 int N) {
    if (f.dimension() != h.field().dimension())
        throw std::invalid_argument("push_forward_substitution_oracle: dimension mismatch");
    const int n = f.dimension();
    const int cap = N + 1;
    PolyMap S = truncated_flow_map(h, N);

    // f composed with the substitution x = S(y)
    std::vector<ScalarPoly> fS;
    for (int r = 0; r < n; ++r) fS.push_back(field_component_poly(f, r, cap).compose(S.comp));

    // J = DS = I + E with E of positive minimal degree; invert as a
    // Neumann series truncated at the cap.
    std::vector<std::vector<ScalarPoly>> E(n, std::vector<ScalarPoly>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            E[i][j] = S.comp[i].derivative(j);
            if (i == j) E[i][j] = E[i][j] - ScalarPoly::constant(n, Scalar(1), cap);
        }
    std::vector<std::vector<ScalarPoly>> inv(n, std::vector<ScalarPoly>(n)),
        power(n, std::vector<ScalarPoly>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            inv[i][j] = i == j ? ScalarPoly::constant(n, Scalar(1), cap) : ScalarPoly(n, cap);
            power[i][j] = inv[i][j];
        }
    for (bool nonzero = true; nonzero;) {
        // power <- -E * power
        std::vector<std::vector<ScalarPoly>> next(n, std::vector<ScalarPoly>(n, ScalarPoly(n, cap)));
        nonzero = false;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                for (int l = 0; l < n; ++l) next[i][j] = next[i][j] - E[i][l] * power[l][j];
                if (!next[i][j].is_zero()) nonzero = true;
            }
        power = next;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) inv[i][j] = inv[i][j] + power[i][j];
    }

    std::vector<ScalarPoly> g;
    for (int i = 0; i < n; ++i) {
        ScalarPoly acc(n, cap);
        for (int j = 0; j < n; ++j) acc = acc + inv[i][j] * fS[j];
        g.push_back(acc);
    }
    return polys_to_field(g, N);
}

PolyVectorField push_forward(const PolyVectorField& f, const PolyVectorField& h, int N) {
    if (h.is_zero()) return f.truncated(N);
    return push_forward(f, Generator(h, 0, 0), N);
}

PolyVectorField push_forward_substitution_oracle(const PolyVectorField& f,
                                                 const PolyVectorField& h, int N) {
    if (h.is_zero()) return f.truncated(N);
    return push_forward_substitution_oracle(f, Generator(h, 0, 0), N);
}

PolyMap truncated_flow_map(const PolyVectorField& h, int N) {
    if (h.is_zero()) return PolyMap::identity(h.dimension(), N + 1);
    return truncated_flow_map(Generator(h, 0, 0), N);
}

CVec map_point(const GeneratorSequence& seq, const CVec& y, MapDirection direction,
               const FlowOptions& opts) {
    CVec x = y;
    auto flow_of = [&](const Generator& g, double sign) {
        const PolyVectorField fld = g.field().to_floating();
        CField rhs = [&fld, sign](const CVec& p) {
            CVec v = evaluate(fld, p);
            for (auto& z : v) z *= sign;
            return v;
        };
        x = rk4_flow(rhs, x, 1.0, opts.rk4_steps);
    };
    if (direction == MapDirection::forward) {
        for (auto it = seq.items.rbegin(); it != seq.items.rend(); ++it) flow_of(*it, +1.0);
    } else {
        for (const auto& g : seq.items) flow_of(g, -1.0);
    }
    return x;
}

}  // namespace renorm
