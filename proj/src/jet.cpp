#include "rectconf/jet.hpp"

#include <cmath>

namespace rectconf {

Jet3 Jet3::partial_u() const
{
    Jet3 r{du};
    r.du = duu;
    r.dv = duv;
    r.duu = duuu;
    r.duv = duuv;
    r.dvv = duvv;
    return r;
}

Jet3 Jet3::partial_v() const
{
    Jet3 r{dv};
    r.du = duv;
    r.dv = dvv;
    r.duu = duuv;
    r.duv = duvv;
    r.dvv = dvvv;
    return r;
}

Jet3 operator+(const Jet3& a, const Jet3& b)
{
    Jet3 r;
    r.val = a.val + b.val;
    r.du = a.du + b.du;
    r.dv = a.dv + b.dv;
    r.duu = a.duu + b.duu;
    r.duv = a.duv + b.duv;
    r.dvv = a.dvv + b.dvv;
    r.duuu = a.duuu + b.duuu;
    r.duuv = a.duuv + b.duuv;
    r.duvv = a.duvv + b.duvv;
    r.dvvv = a.dvvv + b.dvvv;
    return r;
}

Jet3 operator-(const Jet3& a)
{
    return -1.0 * a;
}

Jet3 operator-(const Jet3& a, const Jet3& b)
{
    return a + (-b);
}

Jet3 operator*(double s, const Jet3& a)
{
    Jet3 r;
    r.val = s * a.val;
    r.du = s * a.du;
    r.dv = s * a.dv;
    r.duu = s * a.duu;
    r.duv = s * a.duv;
    r.dvv = s * a.dvv;
    r.duuu = s * a.duuu;
    r.duuv = s * a.duuv;
    r.duvv = s * a.duvv;
    r.dvvv = s * a.dvvv;
    return r;
}

Jet3 operator*(const Jet3& a, double s)
{
    return s * a;
}

// Leibniz rule, truncated at total order 3.
Jet3 operator*(const Jet3& f, const Jet3& g)
{
    Jet3 h;
    h.val = f.val * g.val;
    h.du = f.du * g.val + f.val * g.du;
    h.dv = f.dv * g.val + f.val * g.dv;
    h.duu = f.duu * g.val + 2.0 * f.du * g.du + f.val * g.duu;
    h.duv = f.duv * g.val + f.du * g.dv + f.dv * g.du + f.val * g.duv;
    h.dvv = f.dvv * g.val + 2.0 * f.dv * g.dv + f.val * g.dvv;
    h.duuu = f.duuu * g.val + 3.0 * f.duu * g.du + 3.0 * f.du * g.duu + f.val * g.duuu;
    h.duuv = f.duuv * g.val + f.duu * g.dv + 2.0 * f.duv * g.du + 2.0 * f.du * g.duv
           + f.dv * g.duu + f.val * g.duuv;
    h.duvv = f.duvv * g.val + f.dvv * g.du + 2.0 * f.duv * g.dv + 2.0 * f.dv * g.duv
           + f.du * g.dvv + f.val * g.duvv;
    h.dvvv = f.dvvv * g.val + 3.0 * f.dvv * g.dv + 3.0 * f.dv * g.dvv + f.val * g.dvvv;
    return h;
}

Jet3 operator/(const Jet3& a, const Jet3& b)
{
    return a * reciprocal(b);
}

Jet3 compose(const Jet3& f, const Derivs3& g)
{
    const double g1 = g.g1, g2 = g.g2, g3 = g.g3;
    Jet3 h;
    h.val = g.g0;
    h.du = g1 * f.du;
    h.dv = g1 * f.dv;
    h.duu = g2 * f.du * f.du + g1 * f.duu;
    h.duv = g2 * f.du * f.dv + g1 * f.duv;
    h.dvv = g2 * f.dv * f.dv + g1 * f.dvv;
    // h_ijk = g''' f_i f_j f_k + g'' (f_ij f_k + f_ik f_j + f_jk f_i) + g' f_ijk
    h.duuu = g3 * f.du * f.du * f.du + g2 * 3.0 * f.duu * f.du + g1 * f.duuu;
    h.duuv = g3 * f.du * f.du * f.dv + g2 * (f.duu * f.dv + 2.0 * f.duv * f.du) + g1 * f.duuv;
    h.duvv = g3 * f.du * f.dv * f.dv + g2 * (f.dvv * f.du + 2.0 * f.duv * f.dv) + g1 * f.duvv;
    h.dvvv = g3 * f.dv * f.dv * f.dv + g2 * 3.0 * f.dvv * f.dv + g1 * f.dvvv;
    return h;
}

Jet3 reciprocal(const Jet3& f)
{
    const double x = f.val;
    const double r = 1.0 / x;
    return compose(f, {r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r});
}

Jet3 ipow(const Jet3& f, long n)
{
    if (n < 0) {
        return reciprocal(ipow(f, -n));
    }
    Jet3 result{1.0};
    Jet3 base = f;
    while (n > 0) {
        if (n & 1) {
            result = result * base;
        }
        n >>= 1;
        if (n > 0) {
            base = base * base;
        }
    }
    return result;
}

Jet3 rpow(const Jet3& f, double p)
{
    const double x = f.val;
    return compose(f, {std::pow(x, p), p * std::pow(x, p - 1.0), p * (p - 1.0) * std::pow(x, p - 2.0),
                       p * (p - 1.0) * (p - 2.0) * std::pow(x, p - 3.0)});
}

Jet3 sin(const Jet3& f)
{
    const double s = std::sin(f.val), c = std::cos(f.val);
    return compose(f, {s, c, -s, -c});
}

Jet3 cos(const Jet3& f)
{
    const double s = std::sin(f.val), c = std::cos(f.val);
    return compose(f, {c, -s, -c, s});
}

Jet3 tan(const Jet3& f)
{
    const double t = std::tan(f.val);
    const double s2 = 1.0 + t * t;
    return compose(f, {t, s2, 2.0 * t * s2, 2.0 * s2 * (1.0 + 3.0 * t * t)});
}

Jet3 sec(const Jet3& f)
{
    const double c = std::cos(f.val);
    const double s = 1.0 / c;
    const double t = std::tan(f.val);
    return compose(f, {s, s * t, s * (t * t + s * s), s * t * (t * t + 5.0 * s * s)});
}

Jet3 exp(const Jet3& f)
{
    const double e = std::exp(f.val);
    return compose(f, {e, e, e, e});
}

Jet3 log(const Jet3& f)
{
    const double r = 1.0 / f.val;
    return compose(f, {std::log(f.val), r, -r * r, 2.0 * r * r * r});
}

Jet3 sqrt(const Jet3& f)
{
    const double r = std::sqrt(f.val);
    const double r3 = r * r * r;
    return compose(f, {r, 0.5 / r, -0.25 / r3, 0.375 / (r3 * r * r)});
}

} // namespace rectconf
