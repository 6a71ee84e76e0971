#include "renorm/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "renorm/algebra.hpp"

namespace renorm {

namespace {
struct Point2 {
    Rational x, y;
};

bool all_exact(const Eigenvalues& lambda) {
    for (const auto& l : lambda)
        if (!l.is_exact()) return false;
    return true;
}

// Is there a direction d with d . p > 0 for every point p? Candidates:
// the points themselves plus the two normals of every point pair; this
// set always contains a separating direction when one exists.
bool strictly_outside_exact(const std::vector<Point2>& pts) {
    std::vector<Point2> candidates = pts;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            Rational dx = pts[i].x - pts[j].x, dy = pts[i].y - pts[j].y;
            candidates.push_back({-dy, dx});
            candidates.push_back({dy, -dx});
        }
    for (const auto& d : candidates) {
        if (d.x == 0 && d.y == 0) continue;
        bool ok = true;
        for (const auto& p : pts)
            if (d.x * p.x + d.y * p.y <= 0) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return false;
}

bool strictly_outside_float(const std::vector<std::complex<double>>& pts) {
    std::vector<std::complex<double>> candidates = pts;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            auto d = pts[i] - pts[j];
            candidates.push_back({-d.imag(), d.real()});
            candidates.push_back({d.imag(), -d.real()});
        }
    for (const auto& d : candidates) {
        if (d == std::complex<double>(0.0, 0.0)) continue;
        bool ok = true;
        for (const auto& p : pts)
            if (d.real() * p.real() + d.imag() * p.imag() <= 0.0) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return false;
}
}  // namespace

bool poincare_criterion(const Eigenvalues& lambda) {
    if (lambda.empty()) throw std::invalid_argument("poincare_criterion: empty eigenvalue list");
    if (all_exact(lambda)) {
        std::vector<Point2> pts;
        pts.reserve(lambda.size());
        for (const auto& l : lambda) pts.push_back({l.exact_value().re, l.exact_value().im});
        return strictly_outside_exact(pts);
    }
    std::vector<std::complex<double>> pts;
    pts.reserve(lambda.size());
    for (const auto& l : lambda) pts.push_back(l.to_complex());
    return strictly_outside_float(pts);
}

SmallDenominatorScan small_denominator_scan(const Eigenvalues& lambda, int cap) {
    if (cap < 2) throw std::invalid_argument("small_denominator_scan: cap must be >= 2");
    const int n = static_cast<int>(lambda.size());
    SmallDenominatorScan scan;

    for (int order = 2; order <= cap; ++order) {
        OrderScan os;
        os.order = order;
        bool have = false;
        double best = 0.0;
        for (const auto& mi : monomial_basis(n, order - 1)) {
            Scalar v = resonance_value(lambda, mi);
            if (v.is_zero()) continue;  // exact resonances excluded
            double a = v.abs();
            if (!have || a < best) {
                have = true;
                best = a;
                os.witness = mi;
            }
        }
        if (have) os.min_abs = best;
        scan.per_order.push_back(std::move(os));
    }

    // Siegel (C, nu) by log-log regression over orders with data
    {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int cnt = 0;
        for (const auto& os : scan.per_order) {
            if (!os.min_abs || *os.min_abs <= 0.0) continue;
            double lx = std::log(static_cast<double>(os.order));
            double ly = std::log(*os.min_abs);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++cnt;
        }
        double det = cnt * sxx - sx * sx;
        if (cnt >= 2 && std::abs(det) > 1e-30) {
            double slope = (cnt * sxy - sx * sy) / det;
            double intercept = (sy - slope * sx) / cnt;
            scan.siegel.valid = true;
            scan.siegel.nu = -slope;
            scan.siegel.C = std::exp(intercept);
        }
    }

    // Bruno omega_k over 2 <= |m| <= 2^k; partial sums use the positive
    // part of ln(1/omega) so they accumulate small-denominator mass only
    double running = 0.0;
    for (int k = 1; (1 << k) <= cap; ++k) {
        bool have = false;
        double omega = 0.0;
        for (const auto& os : scan.per_order) {
            if (os.order > (1 << k)) break;
            if (!os.min_abs) continue;
            if (!have || *os.min_abs < omega) {
                have = true;
                omega = *os.min_abs;
            }
        }
        if (!have) break;
        scan.bruno.omegas.push_back(omega);
        running += std::ldexp(std::max(0.0, std::log(1.0 / omega)), -k);
        scan.bruno.partial_sums.push_back(running);
    }
    return scan;
}

ConditionAResult condition_a_check(const PolyVectorField& nf, const Eigenvalues& lambda, int N) {
    const int n = static_cast<int>(lambda.size());
    ConditionAResult res;
    res.alpha = ScalarPoly(n, std::max(N, 0));
    for (int k = 1; k <= N; ++k) {
        PolyVectorField wk = nf.grade_component(k);
        if (wk.is_zero()) continue;
        // columns x^m (A x) for |m| = k
        std::vector<std::vector<int>> exps;
        for (const auto& mi : monomial_basis(n, k - 1))
            if (mi.dir == 0) exps.push_back(mi.m);
        auto monos = monomial_basis(n, k);
        std::vector<std::vector<Scalar>> cols;
        for (const auto& e : exps) {
            PolyVectorField v(n, k);
            for (int r = 0; r < n; ++r) {
                if (lambda[r].is_zero()) continue;
                std::vector<int> m = e;
                m[r] += 1;
                v.add_term(MonomialIndex(m, r), lambda[r]);
            }
            cols.push_back(field_to_coords(v, monos));
        }
        std::optional<std::vector<Scalar>> sol;
        if (!cols.empty())
            sol = solve_pivot(ScalarMatrix::from_columns(cols), field_to_coords(wk, monos));
        if (!sol) {
            res.holds = false;
            res.failing_grade = k;
            res.alpha = ScalarPoly(n, std::max(N, 0));
            return res;
        }
        for (std::size_t j = 0; j < exps.size(); ++j)
            if (!(*sol)[j].is_zero()) res.alpha.add_term(exps[j], (*sol)[j]);
    }
    res.holds = true;
    return res;
}

double ErrorBound::rho(double t) const { return (b / a) * std::expm1(a * t); }

ErrorBound error_bound(const ErrorBoundInput& in) {
    if (in.C <= 0 || in.M <= 0 || in.eps <= 0 || in.mu < 1 || in.delta <= 0)
        throw std::invalid_argument("error_bound: parameters must be positive and mu >= 1");
    ErrorBound eb;
    eb.a = in.C;
    eb.b = std::pow(std::abs(in.eps), in.mu) * in.M;
    eb.t0 = std::log1p(in.delta * in.C / eb.b) / in.C;
    return eb;
}

Trajectory rk4_integrate(const CField& f, const CVec& x0, double T, int steps) {
    if (steps < 1) throw std::invalid_argument("rk4_integrate: steps must be >= 1");
    Trajectory tr;
    tr.times.reserve(steps + 1);
    tr.states.reserve(steps + 1);
    const double h = T / steps;
    CVec x = x0;
    tr.times.push_back(0.0);
    tr.states.push_back(x);
    for (int s = 1; s <= steps; ++s) {
        x = rk4_step(f, x, h);
        if (!all_finite(x)) throw std::runtime_error("rk4_integrate: non-finite state");
        tr.times.push_back(s * h);
        tr.states.push_back(x);
    }
    return tr;
}

namespace {
double norm2(const CVec& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

double dist(const CVec& a, const CVec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s);
}
}  // namespace

BoundReport verify_bound(const PolyVectorField& f, const Eigenvalues& lambda,
                         const ErrorBoundInput& in, const CVec& x0, double T, int steps,
                         double region_radius) {
    PolyVectorField ffl = f.to_floating();
    PolyVectorField lin = PolyVectorField::linear(lambda, 1).to_floating();
    CField full = [&ffl](const CVec& p) { return evaluate(ffl, p); };
    CField linear = [&lin](const CVec& p) { return evaluate(lin, p); };

    Trajectory tx = rk4_integrate(full, x0, T, steps);
    Trajectory txi = rk4_integrate(linear, x0, T, steps);
    ErrorBound eb = error_bound(in);

    BoundReport rep;
    for (std::size_t j = 0; j < tx.times.size(); ++j) {
        if (norm2(tx.states[j]) > region_radius || norm2(txi.states[j]) > region_radius) {
            rep.exit_index = static_cast<int>(j);
            break;
        }
        BoundSample s;
        s.t = tx.times[j];
        s.rho = dist(tx.states[j], txi.states[j]);
        s.bound = eb.rho(s.t);
        if (s.bound > 0.0) rep.max_ratio = std::max(rep.max_ratio, s.rho / s.bound);
        if (s.rho > s.bound && j > 0) rep.ok = false;
        rep.samples.push_back(s);
    }
    return rep;
}

double conjugacy_defect(const PolyVectorField& full, const NormalFormResult& result,
                        const CVec& x0, double T, int steps, const FlowOptions& flow,
                        int samples) {
    PolyVectorField ffl = full.to_floating();
    PolyVectorField nfl = result.normal_form.to_floating();
    CField ff = [&ffl](const CVec& p) { return evaluate(ffl, p); };
    CField nf = [&nfl](const CVec& p) { return evaluate(nfl, p); };

    CVec y0 = map_point(result.generators, x0, MapDirection::inverse, flow);
    Trajectory tx = rk4_integrate(ff, x0, T, steps);
    Trajectory ty = rk4_integrate(nf, y0, T, steps);

    const int stride = std::max(1, steps / std::max(1, samples));
    double worst = 0.0;
    for (std::size_t j = 0; j < tx.states.size(); j += stride) {
        CVec mapped = map_point(result.generators, ty.states[j], MapDirection::forward, flow);
        worst = std::max(worst, dist(tx.states[j], mapped));
    }
    return worst;
}

}  // namespace renorm
