#pragma once

#include <optional>

#include "renorm/normalizer.hpp"
#include "renorm/polymap.hpp"
#include "renorm/rk4.hpp"

namespace renorm {

/// True iff zero lies strictly outside the convex hull of the eigenvalues
/// in the complex plane. Exact predicates on the exact backend.
bool poincare_criterion(const Eigenvalues& lambda);

struct OrderScan {
    int order = 0;                        // |m|
    std::optional<double> min_abs;        // absent: no nonresonant pair at this order
    std::optional<MonomialIndex> witness;
};

/// Least-squares fit of min_|m| ~ C / |m|^nu. Empirical only: a finite
/// scan can never certify a Diophantine condition.
struct SiegelFit {
    bool valid = false;
    double C = 0.0;
    double nu = 0.0;
};

struct BrunoData {
    std::vector<double> omegas;        // omega_k over 2 <= |m| <= 2^k, k = 1..K
    std::vector<double> partial_sums;  // sum of 2^{-k} max(0, ln(1/omega_k))
};

struct SmallDenominatorScan {
    std::vector<OrderScan> per_order;  // orders 2..cap
    SiegelFit siegel;
    BrunoData bruno;
};

SmallDenominatorScan small_denominator_scan(const Eigenvalues& lambda, int cap);

struct ConditionAResult {
    bool holds = false;
    ScalarPoly alpha;        // witness with f = [1 + alpha] A x
    int failing_grade = -1;  // first grade without a decomposition
};

/// Condition A: every nonlinear grade of nf decomposes as alpha_k(x) * Ax
/// with scalar polynomial alpha_k. nf is expected in PD normal form.
ConditionAResult condition_a_check(const PolyVectorField& nf, const Eigenvalues& lambda, int N);

struct ErrorBoundInput {
    double C = 1.0;    // operator norm of A
    double M = 1.0;    // bound on |g| over the region B
    double eps = 0.1;  // epsilon
    int mu = 1;        // leading order
    double delta = 0.1;
};

struct ErrorBound {
    double a = 0.0;  // C
    double b = 0.0;  // |eps|^mu M
    double t0 = 0.0;
    double rho(double t) const;  // (b/a)(e^{at} - 1)
};

/// Growth-bound parameters and the guaranteed time t0 with rho(t0) = delta.
ErrorBound error_bound(const ErrorBoundInput& in);

struct Trajectory {
    std::vector<double> times;
    std::vector<CVec> states;
};

/// Fixed-step classical RK4 with the full sampled trajectory.
Trajectory rk4_integrate(const CField& f, const CVec& x0, double T, int steps);

struct BoundSample {
    double t = 0.0;
    double rho = 0.0;
    double bound = 0.0;
};

struct BoundReport {
    bool ok = true;         // rho <= bound at every sample before region exit
    double max_ratio = 0.0;
    int exit_index = -1;    // first sample outside the region, -1 if none
    std::vector<BoundSample> samples;
};

/// Integrate the full system and its linear part from x0 and compare the
/// measured deviation against the analytic bound. Trajectories leaving the
/// ball of the given radius stop the comparison (reported, not fatal).
BoundReport verify_bound(const PolyVectorField& f, const Eigenvalues& lambda,
                         const ErrorBoundInput& in, const CVec& x0, double T, int steps,
                         double region_radius);

/// Max over sampled t in [0, T] of |x(t) - Phi(y(t))|, where x flows the
/// input field from x0, y flows the truncated normal form from the
/// pulled-back initial point, and Phi is the forward coordinate map.
/// Trajectories use all `steps`; the defect itself is evaluated at about
/// `samples` evenly spaced times.
double conjugacy_defect(const PolyVectorField& full, const NormalFormResult& result,
                        const CVec& x0, double T, int steps, const FlowOptions& flow = {},
                        int samples = 64);

}  // namespace renorm
