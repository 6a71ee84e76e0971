#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace renorm {

using CVec = std::vector<std::complex<double>>;
using CField = std::function<CVec(const CVec&)>;

inline bool all_finite(const CVec& x) {
    for (const auto& z : x)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

/// One classical RK4 step of dx/dt = f(x).
inline CVec rk4_step(const CField& f, const CVec& x, double h) {
    const std::size_t n = x.size();
    CVec k1 = f(x);
    CVec tmp(n);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
    CVec k2 = f(tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
    CVec k3 = f(tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
    CVec k4 = f(tmp);
    CVec out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = x[i] + (h / 6.0) * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
    return out;
}

/// Fixed-step RK4 from 0 to T; returns the final state only.
inline CVec rk4_flow(const CField& f, CVec x, double T, int steps) {
    if (steps < 1) throw std::invalid_argument("rk4_flow: steps must be >= 1");
    const double h = T / steps;
    for (int s = 0; s < steps; ++s) {
        x = rk4_step(f, x, h);
        if (!all_finite(x)) throw std::runtime_error("rk4_flow: non-finite state");
    }
    return x;
}

}  // namespace renorm
