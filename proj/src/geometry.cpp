#include "rectconf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rectconf {

namespace {

std::string point_text(double u, double v)
{
    std::ostringstream os;
    os.precision(17);
    os << "(u=" << u << ", v=" << v << ")";
    return os.str();
}

double slack(double lo, double hi)
{
    return 1e-9 * std::max(1.0, std::abs(hi - lo));
}

Vec3 column(const std::array<Jet3, 3>& c, double Jet3::*slot)
{
    return {c[0].*slot, c[1].*slot, c[2].*slot};
}

Jet3 dot(const std::array<Jet3, 3>& a, const std::array<Jet3, 3>& b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

} // namespace

DegeneracyError::DegeneracyError(const std::string& what, double u, double v)
    : Error(ErrorKind::Degenerate, what + " at " + point_text(u, v)), u_(u), v_(v)
{
}

bool Domain::contains(double u, double v) const noexcept
{
    return u >= u_min - slack(u_min, u_max) && u <= u_max + slack(u_min, u_max) && v >= v_min - slack(v_min, v_max)
        && v <= v_max + slack(v_min, v_max);
}

bool Domain::contains(const Domain& other) const noexcept
{
    return contains(other.u_min, other.v_min) && contains(other.u_max, other.v_max);
}

SurfacePatch::SurfacePatch(Expr x, Expr y, Expr z, Domain domain)
    : components_{std::move(x), std::move(y), std::move(z)}, domain_(domain)
{
    const std::vector<std::string> uv{"u", "v"};
    for (const auto& c : components_) {
        if (c.variables() != uv) {
            throw Error(ErrorKind::Schema, "surface components must be expressions in (u, v)");
        }
    }
    if (!(domain_.u_min < domain_.u_max) || !(domain_.v_min < domain_.v_max)) {
        throw Error(ErrorKind::Schema, "surface domain must be a non-empty rectangle");
    }
}

SurfacePatch SurfacePatch::parse(std::string_view x, std::string_view y, std::string_view z, Domain domain)
{
    return SurfacePatch(rectconf::parse(x, {"u", "v"}), rectconf::parse(y, {"u", "v"}), rectconf::parse(z, {"u", "v"}),
                        domain);
}

bool SurfacePatch::is_monge() const noexcept
{
    return components_[0].is_variable("u") && components_[1].is_variable("v");
}

std::array<Jet3, 3> SurfacePatch::evaluate(const Jet3& u, const Jet3& v) const
{
    const std::array<Jet3, 2> args{u, v};
    return {components_[0].evaluate(args), components_[1].evaluate(args), components_[2].evaluate(args)};
}

SurfaceJet surface_jet(const SurfacePatch& patch, double u, double v)
{
    if (!patch.domain().contains(u, v)) {
        throw Error(ErrorKind::Domain, "chart point " + point_text(u, v) + " outside the patch domain");
    }
    SurfaceJet j;
    j.u = u;
    j.v = v;
    j.components = patch.evaluate(Jet3::variable_u(u), Jet3::variable_v(v));
    j.p = column(j.components, &Jet3::val);
    j.pu = column(j.components, &Jet3::du);
    j.pv = column(j.components, &Jet3::dv);
    j.puu = column(j.components, &Jet3::duu);
    j.puv = column(j.components, &Jet3::duv);
    j.pvv = column(j.components, &Jet3::dvv);
    j.puuu = column(j.components, &Jet3::duuu);
    j.puuv = column(j.components, &Jet3::duuv);
    j.puvv = column(j.components, &Jet3::duvv);
    j.pvvv = column(j.components, &Jet3::dvvv);
    return j;
}

Metric metric(const SurfaceJet& jet)
{
    std::array<Jet3, 3> phi_u, phi_v;
    for (std::size_t i = 0; i < 3; ++i) {
        phi_u[i] = jet.components[i].partial_u();
        phi_v[i] = jet.components[i].partial_v();
    }
    const Jet3 E = dot(phi_u, phi_u);
    const Jet3 F = dot(phi_u, phi_v);
    const Jet3 G = dot(phi_v, phi_v);
    Metric g;
    g.E = E.val;
    g.F = F.val;
    g.G = G.val;
    g.E_u = E.du;
    g.E_v = E.dv;
    g.F_u = F.du;
    g.F_v = F.dv;
    g.G_u = G.du;
    g.G_v = G.dv;
    return g;
}

FundamentalForms fundamental_forms(const SurfaceJet& jet, double w_min)
{
    FundamentalForms f;
    f.E = jet.pu.dot(jet.pu);
    f.F = jet.pu.dot(jet.pv);
    f.G = jet.pv.dot(jet.pv);
    const double w2 = f.E * f.G - f.F * f.F;
    if (!(w2 >= w_min)) {
        throw DegeneracyError("degenerate patch, EG-F^2 below floor", jet.u, jet.v);
    }
    f.W = std::sqrt(w2);
    f.normal = jet.pu.cross(jet.pv) / f.W;
    f.L = jet.puu.dot(f.normal);
    f.M = jet.puv.dot(f.normal);
    f.N = jet.pvv.dot(f.normal);
    return f;
}

FundamentalForms fundamental_forms(const SurfacePatch& patch, double u, double v, double w_min)
{
    return fundamental_forms(surface_jet(patch, u, v), w_min);
}

double ConnectionTable::max_abs() const noexcept
{
    double m = 0.0;
    for (double x : values()) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

double ConnectionTable::max_abs_diff(const ConnectionTable& other) const noexcept
{
    const auto a = values();
    const auto b = other.values();
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

Christoffel christoffel(const Metric& g, double w_min)
{
    const double w2 = g.W2();
    if (!(w2 >= w_min)) {
        throw Error(ErrorKind::Degenerate, "degenerate metric, EG-F^2 below floor");
    }
    const double k = 1.0 / (2.0 * w2);
    Christoffel c;
    c.t1_11 = k * (g.G * g.E_u + g.F * (g.E_v - 2.0 * g.F_u));
    c.t2_11 = k * (g.E * (2.0 * g.F_u - g.E_v) - g.F * g.E_u);
    c.t1_12 = k * (g.G * g.E_v - g.F * g.G_u);
    c.t2_12 = k * (g.E * g.G_u - g.F * g.E_v);
    c.t1_22 = k * (g.G * (2.0 * g.F_v - g.G_u) - g.F * g.G_v);
    c.t2_22 = k * (g.E * g.G_v + g.F * (g.G_u - 2.0 * g.F_v));
    return c;
}

Christoffel christoffel(const SurfacePatch& patch, double u, double v, double w_min)
{
    const auto jet = surface_jet(patch, u, v);
    const auto g = metric(jet);
    if (!(g.W2() >= w_min)) {
        throw DegeneracyError("degenerate patch, EG-F^2 below floor", u, v);
    }
    return christoffel(g, w_min);
}

Christoffel christoffel_printed(const Metric& g, double w_min)
{
    const double w2 = g.W2();
    if (!(w2 >= w_min)) {
        throw Error(ErrorKind::Degenerate, "degenerate metric, EG-F^2 below floor");
    }
    const double k = 1.0 / (2.0 * w2);
    Christoffel c;
    c.t1_11 = k * (g.G * g.E_u + g.F * (g.E_v - 2.0 * g.F_u));
    c.t2_22 = k * (g.E * g.G_v + g.F * (g.G_v - 2.0 * g.F_v));
    c.t2_11 = k * (g.E * (2.0 * g.F_u - g.E_v) - g.F * g.E_v);
    c.t1_22 = k * (g.G * (2.0 * g.F_v - g.G_u) - g.F * g.G_v);
    c.t2_12 = k * (g.E * g.G_u - g.F * g.E_v);
    c.t1_12 = k * (g.G * g.E_v - g.F * g.G_u);
    return c;
}

MongeSecondForms monge_second_forms(const SurfacePatch& patch, double u, double v)
{
    if (!patch.is_monge()) {
        throw Error(ErrorKind::NotMonge, "patch is not in Monge form (u, v, f(u, v))");
    }
    const auto jet = surface_jet(patch, u, v);
    const Jet3& f = jet.components[2];
    MongeSecondForms out;
    out.W2 = 1.0 + f.du * f.du + f.dv * f.dv;
    const double w = std::sqrt(out.W2);
    out.printed_variant = {f.duu / out.W2, f.duv / out.W2, f.dvv / out.W2};
    out.classical = {f.duu / w, f.duv / w, f.dvv / w};
    out.difference = {out.printed_variant.L - out.classical.L, out.printed_variant.M - out.classical.M,
                      out.printed_variant.N - out.classical.N};
    return out;
}

} // namespace rectconf
