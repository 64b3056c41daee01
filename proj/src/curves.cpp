#include "rectconf/curves.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rectconf {

namespace {

std::string number_text(double x)
{
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

// s-derivatives of a quantity from its t-derivatives f1, f2, f3 and the speed tower.
struct ArcDerivs {
    double d1, d2, d3;
};

ArcDerivs to_arclength(double f1, double f2, double f3, double sp, double sp_t, double sp_tt)
{
    const double s2 = sp * sp;
    const double s3 = s2 * sp;
    const double s4 = s3 * sp;
    const double s5 = s4 * sp;
    return {f1 / sp, f2 / s2 - f1 * sp_t / s3,
            f3 / s3 - 3.0 * f2 * sp_t / s4 - f1 * sp_tt / s4 + 3.0 * f1 * sp_t * sp_t / s5};
}

double speed_at(const SurfacePatch& patch, const ParamCurve& curve, double t)
{
    return evaluate_curve(patch, curve, t).speed;
}

// Cumulative Simpson table on n equal panels.
void simpson_table(const SurfacePatch& patch, const ParamCurve& curve, int n, double c_min, std::vector<double>& ts,
                   std::vector<double>& ss)
{
    ts.assign(static_cast<std::size_t>(n) + 1, 0.0);
    ss.assign(static_cast<std::size_t>(n) + 1, 0.0);
    const double h = (curve.t1 - curve.t0) / n;
    auto checked_speed = [&](double t) {
        const double sp = speed_at(patch, curve, t);
        if (!(sp >= c_min)) {
            throw RegularityError("curve speed " + number_text(sp) + " below regularity floor", t);
        }
        return sp;
    };
    double left = checked_speed(curve.t0);
    ts[0] = curve.t0;
    for (int k = 0; k < n; ++k) {
        const double a = curve.t0 + k * h;
        const double b = (k + 1 == n) ? curve.t1 : curve.t0 + (k + 1) * h;
        const double mid = checked_speed(0.5 * (a + b));
        const double right = checked_speed(b);
        ts[static_cast<std::size_t>(k) + 1] = b;
        ss[static_cast<std::size_t>(k) + 1] = ss[static_cast<std::size_t>(k)] + (b - a) / 6.0 * (left + 4.0 * mid + right);
        left = right;
    }
}

} // namespace

ParamCurve ParamCurve::parse(std::string_view u, std::string_view v, double t0, double t1)
{
    if (!(t0 < t1)) {
        throw Error(ErrorKind::Schema, "curve range must satisfy t0 < t1");
    }
    return ParamCurve{rectconf::parse(u, {"t"}), rectconf::parse(v, {"t"}), t0, t1};
}

RegularityError::RegularityError(const std::string& what, double t)
    : Error(ErrorKind::Regularity, what + " at t=" + number_text(t)), t_(t)
{
}

FrenetUndefinedError::FrenetUndefinedError(double s, double kappa)
    : Error(ErrorKind::FrenetUndefined,
            "Frenet frame undefined (curvature " + number_text(kappa) + ") at s=" + number_text(s)),
      s_(s)
{
}

CurvePoint evaluate_curve(const SurfacePatch& patch, const ParamCurve& curve, double t)
{
    const std::array<double, 1> at{t};
    const Jet3 u = eval_jet3(curve.u, at);
    const Jet3 v = eval_jet3(curve.v, at);
    if (!patch.domain().contains(u.val, v.val)) {
        throw Error(ErrorKind::Domain, "curve leaves the patch domain at t=" + number_text(t));
    }
    const auto a = patch.evaluate(u, v);
    const Vec3 x0{a[0].val, a[1].val, a[2].val};
    const Vec3 x1{a[0].du, a[1].du, a[2].du};
    const Vec3 x2{a[0].duu, a[1].duu, a[2].duu};
    const Vec3 x3{a[0].duuu, a[1].duuu, a[2].duuu};

    CurvePoint p;
    p.t = t;
    p.u = u.val;
    p.v = v.val;
    p.alpha = x0;
    p.speed = x1.norm();
    if (!(p.speed > 0.0)) {
        return p;
    }
    p.speed_t = x1.dot(x2) / p.speed;
    p.speed_tt = (x2.squaredNorm() + x1.dot(x3)) / p.speed - p.speed_t * p.speed_t / p.speed;

    const auto du = to_arclength(u.du, u.duu, u.duuu, p.speed, p.speed_t, p.speed_tt);
    const auto dv = to_arclength(v.du, v.duu, v.duuu, p.speed, p.speed_t, p.speed_tt);
    p.up = du.d1;
    p.upp = du.d2;
    p.uppp = du.d3;
    p.vp = dv.d1;
    p.vpp = dv.d2;
    p.vppp = dv.d3;
    for (int i = 0; i < 3; ++i) {
        const auto d = to_arclength(x1[i], x2[i], x3[i], p.speed, p.speed_t, p.speed_tt);
        p.d1[i] = d.d1;
        p.d2[i] = d.d2;
        p.d3[i] = d.d3;
    }
    return p;
}

CurveOnSurface::CurveOnSurface(SurfacePatch patch, ParamCurve curve, std::vector<double> nodes_t,
                               std::vector<double> nodes_s)
    : patch_(std::move(patch)), curve_(std::move(curve)), nodes_t_(std::move(nodes_t)), nodes_s_(std::move(nodes_s))
{
    if (nodes_t_.size() < 2 || nodes_t_.size() != nodes_s_.size()) {
        throw Error(ErrorKind::Usage, "arc-length table needs matching node arrays");
    }
}

double CurveOnSurface::arclength_at(double t) const
{
    t = std::clamp(t, nodes_t_.front(), nodes_t_.back());
    auto it = std::upper_bound(nodes_t_.begin(), nodes_t_.end(), t);
    std::size_t k = static_cast<std::size_t>(std::distance(nodes_t_.begin(), it));
    k = std::clamp<std::size_t>(k, 1, nodes_t_.size() - 1) - 1;
    const double a = nodes_t_[k];
    if (t == a) {
        return nodes_s_[k];
    }
    const double fa = speed_at(patch_, curve_, a);
    const double fm = speed_at(patch_, curve_, 0.5 * (a + t));
    const double fb = speed_at(patch_, curve_, t);
    return nodes_s_[k] + (t - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double CurveOnSurface::parameter_at(double s) const
{
    const double total = length();
    const double eps = 1e-9 * std::max(1.0, total);
    if (s < -eps || s > total + eps) {
        throw Error(ErrorKind::Domain, "arc length " + number_text(s) + " outside [0, " + number_text(total) + "]");
    }
    s = std::clamp(s, 0.0, total);
    auto it = std::upper_bound(nodes_s_.begin(), nodes_s_.end(), s);
    std::size_t k = static_cast<std::size_t>(std::distance(nodes_s_.begin(), it));
    k = std::clamp<std::size_t>(k, 1, nodes_s_.size() - 1) - 1;
    const double ta = nodes_t_[k], tb = nodes_t_[k + 1];
    const double sa = nodes_s_[k], sb = nodes_s_[k + 1];
    if (s == sa) {
        return ta;
    }
    if (s == sb) {
        return tb;
    }
    double t = ta + (tb - ta) * (s - sa) / (sb - sa);
    for (int iter = 0; iter < 50; ++iter) {
        const double f = arclength_at(t) - s;
        const double step = f / speed_at(patch_, curve_, t);
        const double next = std::clamp(t - step, ta, tb);
        const bool done = std::abs(next - t) <= 1e-15 * std::max(1.0, std::abs(t));
        t = next;
        if (done) {
            break;
        }
    }
    return t;
}

CurvePoint CurveOnSurface::at_parameter(double t) const
{
    CurvePoint p = evaluate_curve(patch_, curve_, t);
    p.s = arclength_at(t);
    return p;
}

CurvePoint CurveOnSurface::at_arclength(double s) const
{
    CurvePoint p = evaluate_curve(patch_, curve_, parameter_at(s));
    p.s = s;
    return p;
}

std::vector<double> CurveOnSurface::sample_grid(int n) const
{
    if (n < 1) {
        throw Error(ErrorKind::Usage, "sample count must be positive");
    }
    if (n == 1) {
        return {0.5 * length()};
    }
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = length() * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    out.back() = length();
    return out;
}

CurveOnSurface reparameterize(const SurfacePatch& patch, const ParamCurve& curve, const ReparamOptions& options)
{
    int n = std::max(2, options.panels);
    std::vector<double> ts, ss;
    simpson_table(patch, curve, n, options.c_min, ts, ss);
    while (n < options.max_panels) {
        std::vector<double> ts2, ss2;
        simpson_table(patch, curve, 2 * n, options.c_min, ts2, ss2);
        const double change = std::abs(ss2.back() - ss.back());
        ts = std::move(ts2);
        ss = std::move(ss2);
        n *= 2;
        if (change <= options.tol * std::max(1.0, ss.back())) {
            break;
        }
    }
    return CurveOnSurface(patch, curve, std::move(ts), std::move(ss));
}

FrenetData frenet(const CurvePoint& p, double kappa_min)
{
    const double kappa = p.d2.norm();
    if (!(kappa >= kappa_min)) {
        throw FrenetUndefinedError(p.s, kappa);
    }
    FrenetData f;
    f.s = p.s;
    f.t = p.t;
    f.tangent = p.d1;
    f.curvature = kappa;
    f.normal = p.d2 / kappa;
    f.binormal = f.tangent.cross(f.normal);
    const Vec3 c = p.d1.cross(p.d2);
    f.torsion = c.dot(p.d3) / c.squaredNorm();
    f.up = p.up;
    f.vp = p.vp;
    f.upp = p.upp;
    f.vpp = p.vpp;
    return f;
}

FrenetData frenet(const CurveOnSurface& curve, double s, double kappa_min)
{
    return frenet(curve.at_arclength(s), kappa_min);
}

double normal_curvature(const CurvePoint& p, const SurfacePatch& patch, double w_min)
{
    const auto forms = fundamental_forms(patch, p.u, p.v, w_min);
    return p.up * p.up * forms.L + 2.0 * p.up * p.vp * forms.M + p.vp * p.vp * forms.N;
}

double normal_curvature(const CurveOnSurface& curve, double s)
{
    return normal_curvature(curve.at_arclength(s), curve.patch());
}

double geodesic_curvature(const CurvePoint& p, const SurfacePatch& patch, double w_min)
{
    const auto jet = surface_jet(patch, p.u, p.v);
    const auto g = metric(jet);
    if (!(g.W2() >= w_min)) {
        throw DegeneracyError("degenerate patch, EG-F^2 below floor", p.u, p.v);
    }
    const auto c = christoffel(g, w_min);
    const double u1 = p.up, v1 = p.vp;
    const double bracket = c.t2_11 * u1 * u1 * u1 + (2.0 * c.t2_12 - c.t1_11) * u1 * u1 * v1
                         + (c.t2_22 - 2.0 * c.t1_12) * u1 * v1 * v1 - c.t1_22 * v1 * v1 * v1 + u1 * p.vpp
                         - p.upp * v1;
    return bracket * std::sqrt(g.W2());
}

double geodesic_curvature(const CurveOnSurface& curve, double s)
{
    return geodesic_curvature(curve.at_arclength(s), curve.patch());
}

Vec3 binormal_from_chart(const CurveOnSurface& curve, double s, double kappa_min)
{
    const auto p = curve.at_arclength(s);
    const double kappa = p.d2.norm();
    if (!(kappa >= kappa_min)) {
        throw FrenetUndefinedError(s, kappa);
    }
    const auto j = surface_jet(curve.patch(), p.u, p.v);
    const double u1 = p.up, v1 = p.vp;
    const Vec3 sum = (u1 * p.vpp - p.upp * v1) * j.pu.cross(j.pv) + u1 * u1 * u1 * j.pu.cross(j.puu)
                   + 2.0 * u1 * u1 * v1 * j.pu.cross(j.puv) + u1 * v1 * v1 * j.pu.cross(j.pvv)
                   + u1 * u1 * v1 * j.pv.cross(j.puu) + 2.0 * u1 * v1 * v1 * j.pv.cross(j.puv)
                   + v1 * v1 * v1 * j.pv.cross(j.pvv);
    return sum / kappa;
}

RectifyingDecomposition rectifying_decompose(const CurveOnSurface& curve, int samples, double rect_tol,
                                             double kappa_min)
{
    if (samples < 3) {
        throw Error(ErrorKind::Usage, "rectifying decomposition needs at least 3 samples");
    }
    RectifyingDecomposition out;
    out.rect_tol = rect_tol;
    const auto grid = curve.sample_grid(samples);
    out.samples.reserve(grid.size());
    for (double s : grid) {
        const auto p = curve.at_arclength(s);
        const auto f = frenet(p, kappa_min);
        RectifyingSample r;
        r.s = s;
        r.xi = p.alpha.dot(f.tangent);
        r.mu = p.alpha.dot(f.binormal);
        r.residual = p.alpha.dot(f.normal);
        r.curvature = f.curvature;
        r.torsion = f.torsion;
        r.mu_over_kappa = r.mu / f.curvature;
        out.max_abs_residual = std::max(out.max_abs_residual, std::abs(r.residual));
        out.max_chen_product = std::max(out.max_chen_product, std::abs(r.xi * r.curvature - r.mu * r.torsion));
        const Vec3 rebuilt = r.xi * f.tangent + r.mu * f.binormal;
        out.max_reconstruction = std::max(out.max_reconstruction, (p.alpha - rebuilt).norm());
        out.samples.push_back(r);
    }
    // central differences with the grid spacing
    for (std::size_t i = 1; i + 1 < out.samples.size(); ++i) {
        const auto& a = out.samples[i - 1];
        const auto& b = out.samples[i + 1];
        const double h = b.s - a.s;
        out.max_xi_prime_dev = std::max(out.max_xi_prime_dev, std::abs((b.xi - a.xi) / h - 1.0));
        out.max_abs_mu_prime = std::max(out.max_abs_mu_prime, std::abs((b.mu - a.mu) / h));
    }
    out.is_rectifying = out.max_abs_residual < rect_tol;
    return out;
}

} // namespace rectconf
