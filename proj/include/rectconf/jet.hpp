#pragma once

namespace rectconf {

/**
 * Truncated derivative tower of a scalar in at most two variables (u, v),
 * complete to total order 3.
 *
 * Slots hold partial derivatives (not Taylor coefficients). Each mixed
 * multi-index has exactly one slot, so symmetry of mixed partials is
 * structural. Univariate jets use the u slots and leave the v slots zero.
 */
struct Jet3 {
    double val = 0.0;
    double du = 0.0, dv = 0.0;
    double duu = 0.0, duv = 0.0, dvv = 0.0;
    double duuu = 0.0, duuv = 0.0, duvv = 0.0, dvvv = 0.0;

    constexpr Jet3() = default;
    constexpr Jet3(double value) : val(value) {} // NOLINT: implicit lift of constants

    /// Independent variable u (or t) at the given point.
    static constexpr Jet3 variable_u(double at) { Jet3 j{at}; j.du = 1.0; return j; }
    /// Independent variable v at the given point.
    static constexpr Jet3 variable_v(double at) { Jet3 j{at}; j.dv = 1.0; return j; }

    /// Jet of ∂f/∂u. Only complete to order 2; order-3 slots are zero.
    [[nodiscard]] Jet3 partial_u() const;
    /// Jet of ∂f/∂v. Only complete to order 2; order-3 slots are zero.
    [[nodiscard]] Jet3 partial_v() const;

    bool operator==(const Jet3&) const = default;
};

Jet3 operator+(const Jet3& a, const Jet3& b);
Jet3 operator-(const Jet3& a, const Jet3& b);
Jet3 operator-(const Jet3& a);
Jet3 operator*(const Jet3& a, const Jet3& b);
Jet3 operator*(double s, const Jet3& a);
Jet3 operator*(const Jet3& a, double s);
Jet3 operator/(const Jet3& a, const Jet3& b);

/// Value and first three derivatives of a univariate function g at f.val.
struct Derivs3 {
    double g0, g1, g2, g3;
};

/// Jet of g(f) from the derivative tower of g (bivariate Faà di Bruno to order 3).
Jet3 compose(const Jet3& f, const Derivs3& g);

Jet3 reciprocal(const Jet3& f);
/// f^n for integer n by repeated squaring (negative n through the reciprocal).
Jet3 ipow(const Jet3& f, long n);
/// f^p for real p; requires f.val > 0 unless p is integral.
Jet3 rpow(const Jet3& f, double p);

Jet3 sin(const Jet3& f);
Jet3 cos(const Jet3& f);
Jet3 tan(const Jet3& f);
Jet3 sec(const Jet3& f);
Jet3 exp(const Jet3& f);
Jet3 log(const Jet3& f);
Jet3 sqrt(const Jet3& f);

} // namespace rectconf
