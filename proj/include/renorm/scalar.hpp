#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <stdexcept>
#include <string>
#include <variant>

namespace renorm {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Tolerance used for zero tests on the floating backend.
inline constexpr double kFloatZeroTol = 1e-10;

/// Complex number with exact rational parts. cpp_rational keeps values
/// canonical (lowest terms, positive denominator) automatically.
struct GaussRational {
    Rational re;
    Rational im;

    GaussRational() = default;
    GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool operator==(const GaussRational& o) const { return re == o.re && im == o.im; }
};

/// Element of the coefficient field: exact Gaussian rational or complex
/// binary64. Mixed-backend arithmetic coerces to floating.
class Scalar {
public:
    enum class Backend { exact, floating };

    Scalar() : v_(GaussRational{0, 0}) {}
    Scalar(int n) : v_(GaussRational{n, 0}) {}          // NOLINT: implicit by design
    Scalar(Rational re) : v_(GaussRational{std::move(re), 0}) {}
    Scalar(GaussRational g) : v_(std::move(g)) {}
    Scalar(std::complex<double> z) : v_(z) {}

    static Scalar exact(Rational re, Rational im = 0) {
        return Scalar(GaussRational{std::move(re), std::move(im)});
    }
    static Scalar floating(double re, double im = 0.0) {
        return Scalar(std::complex<double>{re, im});
    }
    /// i (exact backend).
    static Scalar imaginary_unit() { return exact(0, 1); }

    Backend backend() const {
        return std::holds_alternative<GaussRational>(v_) ? Backend::exact : Backend::floating;
    }
    bool is_exact() const { return backend() == Backend::exact; }

    const GaussRational& exact_value() const {
        if (!is_exact()) throw std::logic_error("Scalar: exact_value() on floating backend");
        return std::get<GaussRational>(v_);
    }

    std::complex<double> to_complex() const {
        if (is_exact()) {
            const auto& g = std::get<GaussRational>(v_);
            return {static_cast<double>(g.re), static_cast<double>(g.im)};
        }
        return std::get<std::complex<double>>(v_);
    }

    /// Zero test: exact equality on the exact backend, |.| <= 1e-10 per
    /// component on the floating backend.
    bool is_zero() const {
        if (is_exact()) {
            const auto& g = std::get<GaussRational>(v_);
            return g.re == 0 && g.im == 0;
        }
        auto z = std::get<std::complex<double>>(v_);
        return std::abs(z.real()) <= kFloatZeroTol && std::abs(z.imag()) <= kFloatZeroTol;
    }

    bool is_one() const {
        if (is_exact()) {
            const auto& g = std::get<GaussRational>(v_);
            return g.re == 1 && g.im == 0;
        }
        auto z = std::get<std::complex<double>>(v_);
        return std::abs(z.real() - 1.0) <= kFloatZeroTol && std::abs(z.imag()) <= kFloatZeroTol;
    }

    Scalar conj() const {
        if (is_exact()) {
            const auto& g = std::get<GaussRational>(v_);
            return exact(g.re, -g.im);
        }
        return Scalar(std::conj(std::get<std::complex<double>>(v_)));
    }

    Scalar operator-() const {
        if (is_exact()) {
            const auto& g = std::get<GaussRational>(v_);
            return exact(-g.re, -g.im);
        }
        return Scalar(-std::get<std::complex<double>>(v_));
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        if (a.is_exact() && b.is_exact()) {
            const auto &x = a.exact_value(), &y = b.exact_value();
            return exact(x.re + y.re, x.im + y.im);
        }
        return Scalar(a.to_complex() + b.to_complex());
    }

    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (a.is_exact() && b.is_exact()) {
            const auto &x = a.exact_value(), &y = b.exact_value();
            return exact(x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re);
        }
        return Scalar(a.to_complex() * b.to_complex());
    }

    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (b.is_zero()) throw std::domain_error("Scalar: division by zero");
        if (a.is_exact() && b.is_exact()) {
            const auto &x = a.exact_value(), &y = b.exact_value();
            Rational d = y.re * y.re + y.im * y.im;
            return exact((x.re * y.re + x.im * y.im) / d, (x.im * y.re - x.re * y.im) / d);
        }
        return Scalar(a.to_complex() / b.to_complex());
    }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    /// Structural equality (same backend, same representation). Use
    /// (a - b).is_zero() for tolerance-aware comparison.
    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.backend() != b.backend()) return false;
        if (a.is_exact()) return a.exact_value() == b.exact_value();
        return a.to_complex() == b.to_complex();
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// |z|^2; exact on the exact backend.
    Scalar abs_squared() const {
        return *this * this->conj();
    }

    double abs() const { return std::abs(to_complex()); }

    /// Coerce to the floating backend.
    Scalar to_floating() const { return Scalar(to_complex()); }

    std::string str() const;

private:
    std::variant<GaussRational, std::complex<double>> v_;
};

/// n! as an exact integer.
BigInt factorial(int n);

}  // namespace renorm
