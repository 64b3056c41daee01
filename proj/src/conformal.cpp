#include "rectconf/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rectconf {

namespace {

const std::vector<std::string> kAmbientVars{"x", "y", "z"};

std::string residual_text(double residual, GridPoint p, double tol)
{
    std::ostringstream os;
    os.precision(17);
    os << "pair is not conformal: metric residual " << residual << " >= " << tol << " at (u=" << p.u << ", v=" << p.v
       << ")";
    return os.str();
}

MetricPartials partials(const Metric& g)
{
    return {g.E_u, g.E_v, g.F_u, g.F_v, g.G_u, g.G_v};
}

double max_abs_diff(const MetricPartials& a, const MetricPartials& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

Dilation dilation_from(const Metric& src, const Metric& img)
{
    // λ² = Ē/E; (λ²)_i = (Ē_i E − Ē E_i)/E²; λ_i = (λ²)_i / (2λ)
    Dilation d;
    const double l2 = img.E / src.E;
    d.lambda = std::sqrt(l2);
    const double l2_u = (img.E_u * src.E - img.E * src.E_u) / (src.E * src.E);
    const double l2_v = (img.E_v * src.E - img.E * src.E_v) / (src.E * src.E);
    d.lambda_u = l2_u / (2.0 * d.lambda);
    d.lambda_v = l2_v / (2.0 * d.lambda);
    return d;
}

} // namespace

// ---------------------------------------------------------------------------

namespace {

std::array<Expr, 9> jacobian_entries(const std::array<Expr, 3>& c)
{
    for (const auto& e : c) {
        if (e.variables() != kAmbientVars) {
            throw Error(ErrorKind::Schema, "ambient map components must be expressions in (x, y, z)");
        }
    }
    auto d = [&](std::size_t i, std::size_t j) { return c[i].differentiate(kAmbientVars[j]); };
    return {d(0, 0), d(0, 1), d(0, 2), d(1, 0), d(1, 1), d(1, 2), d(2, 0), d(2, 1), d(2, 2)};
}

} // namespace

AmbientMap::AmbientMap(Expr X, Expr Y, Expr Z)
    : components_{std::move(X), std::move(Y), std::move(Z)}, jacobian_(jacobian_entries(components_))
{
}

AmbientMap AmbientMap::parse(std::string_view X, std::string_view Y, std::string_view Z)
{
    return AmbientMap(rectconf::parse(X, kAmbientVars), rectconf::parse(Y, kAmbientVars),
                      rectconf::parse(Z, kAmbientVars));
}

SurfacePatch AmbientMap::compose(const SurfacePatch& source) const
{
    const auto& phi = source.components();
    return SurfacePatch(components_[0].substitute(phi), components_[1].substitute(phi), components_[2].substitute(phi),
                        source.domain());
}

Vec3 AmbientMap::apply(const Vec3& x) const
{
    const std::array<double, 3> p{x[0], x[1], x[2]};
    return {components_[0].value(p), components_[1].value(p), components_[2].value(p)};
}

Mat3 AmbientMap::jacobian(const Vec3& x) const
{
    const std::array<double, 3> p{x[0], x[1], x[2]};
    Mat3 J;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            J(i, j) = jacobian_[static_cast<std::size_t>(3 * i + j)].value(p);
        }
    }
    return J;
}

AmbientMap::AlongPatch AmbientMap::jacobian_along(const SurfacePatch& patch, double u, double v) const
{
    const auto phi = patch.evaluate(Jet3::variable_u(u), Jet3::variable_v(v));
    AlongPatch out;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const Jet3 e = jacobian_[static_cast<std::size_t>(3 * i + j)].evaluate(phi);
            out.J(i, j) = e.val;
            out.dJ_du(i, j) = e.du;
            out.dJ_dv(i, j) = e.dv;
        }
    }
    return out;
}

const char* to_string(PairMode mode) noexcept
{
    return mode == PairMode::Ambient ? "ambient" : "patch";
}

const char* to_string(Classification c) noexcept
{
    switch (c) {
    case Classification::Conformal: return "conformal";
    case Classification::Homothetic: return "homothetic";
    case Classification::Isometric: return "isometric";
    }
    return "conformal";
}

NonConformalError::NonConformalError(double residual, GridPoint worst, double tol)
    : Error(ErrorKind::NonConformal, residual_text(residual, worst, tol)), residual_(residual), worst_(worst)
{
}

ConformalPair build_pair_impl(const SurfacePatch& source, const SurfacePatch& image, PairMode mode,
                              std::optional<AmbientMap> map, const PairOptions& options)
{
    if (options.grid < 2) {
        throw Error(ErrorKind::Usage, "pair grid needs at least 2 points per direction");
    }
    if (!image.domain().contains(source.domain())) {
        throw Error(ErrorKind::Schema, "image patch domain does not cover the source domain");
    }
    ConformalPair pair(source, image);
    pair.mode_ = mode;
    pair.map_ = std::move(map);
    pair.grid_ = options.grid;
    pair.w_min_ = options.w_min;
    pair.lambda_min_ = std::numeric_limits<double>::infinity();
    pair.lambda_max_ = -std::numeric_limits<double>::infinity();

    const auto& dom = source.domain();
    const int n = options.grid;
    double worst = -1.0;
    double lambda_err = 0.0;
    double one_dev = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = dom.u_min + (dom.u_max - dom.u_min) * i / (n - 1);
        for (int j = 0; j < n; ++j) {
            const double v = dom.v_min + (dom.v_max - dom.v_min) * j / (n - 1);
            const auto a = fundamental_forms(source, u, v, options.w_min);
            const auto jet_b = surface_jet(image, u, v);
            const double Eb = jet_b.pu.dot(jet_b.pu);
            const double Fb = jet_b.pu.dot(jet_b.pv);
            const double Gb = jet_b.pv.dot(jet_b.pv);
            if (!(Eb * Gb - Fb * Fb >= options.w_min)) {
                throw DegeneracyError("degenerate image patch", u, v);
            }
            const double l2 = Eb / a.E;
            const double r = std::max({std::abs(Eb - l2 * a.E) / Eb, std::abs(Gb - l2 * a.G) / Gb,
                                       std::abs(Fb - l2 * a.F) / std::max(Eb, Gb)});
            if (r > worst) {
                worst = r;
                pair.worst_ = {u, v};
            }
            const double lambda = std::sqrt(l2);
            pair.lambda_min_ = std::min(pair.lambda_min_, lambda);
            pair.lambda_max_ = std::max(pair.lambda_max_, lambda);
            one_dev = std::max(one_dev, std::abs(lambda - 1.0));
            if (options.lambda) {
                const std::array<double, 2> at{u, v};
                lambda_err = std::max(lambda_err, std::abs(options.lambda->value(at) - lambda) / lambda);
            }
        }
    }
    pair.residual_ = worst;
    if (!(worst < options.conf_tol)) {
        throw NonConformalError(worst, pair.worst_, options.conf_tol);
    }
    if (options.lambda) {
        pair.lambda_check_ = lambda_err;
    }
    if (one_dev <= options.const_tol) {
        pair.class_ = Classification::Isometric;
    } else if (pair.lambda_max_ - pair.lambda_min_ <= options.const_tol) {
        pair.class_ = Classification::Homothetic;
    } else {
        pair.class_ = Classification::Conformal;
    }
    return pair;
}

ConformalPair build_pair(const SurfacePatch& source, const AmbientMap& map, const PairOptions& options)
{
    return build_pair_impl(source, map.compose(source), PairMode::Ambient, map, options);
}

ConformalPair build_pair(const SurfacePatch& source, const SurfacePatch& image, const PairOptions& options)
{
    return build_pair_impl(source, image, PairMode::Patch, std::nullopt, options);
}

PairPoint evaluate_pair(const ConformalPair& pair, double u, double v)
{
    PairPoint p;
    p.source_jet = surface_jet(pair.source(), u, v);
    p.image_jet = surface_jet(pair.image(), u, v);
    p.source_metric = metric(p.source_jet);
    p.image_metric = metric(p.image_jet);
    if (!(p.source_metric.W2() >= pair.w_min())) {
        throw DegeneracyError("degenerate source patch", u, v);
    }
    if (!(p.image_metric.W2() >= pair.w_min())) {
        throw DegeneracyError("degenerate image patch", u, v);
    }
    p.dilation = dilation_from(p.source_metric, p.image_metric);
    return p;
}

Dilation dilation(const ConformalPair& pair, double u, double v)
{
    return evaluate_pair(pair, u, v).dilation;
}

MetricCoefficientDerivatives metric_coefficient_derivatives(const ConformalPair& pair, double u, double v)
{
    const auto p = evaluate_pair(pair, u, v);
    const auto& g = p.source_metric;
    const auto& d = p.dilation;
    const double l = d.lambda, l2 = l * l;
    MetricCoefficientDerivatives out;
    out.direct = partials(p.image_metric);
    out.product_rule = {2 * l * d.lambda_u * g.E + l2 * g.E_u, 2 * l * d.lambda_v * g.E + l2 * g.E_v,
                        2 * l * d.lambda_u * g.F + l2 * g.F_u, 2 * l * d.lambda_v * g.F + l2 * g.F_v,
                        2 * l * d.lambda_u * g.G + l2 * g.G_u, 2 * l * d.lambda_v * g.G + l2 * g.G_v};
    out.printed = {2 * l * d.lambda_u * g.E + l2 * g.E_v, 2 * l * d.lambda_v * g.E + l2 * g.E_v,
                   2 * l * d.lambda_u * g.F + l2 * g.F_v, 2 * l * d.lambda_v * g.F + l2 * g.F_v,
                   2 * l * d.lambda_u * g.G + l2 * g.G_v, 2 * l * d.lambda_v * g.G + l2 * g.G_v};
    out.product_rule_residual = max_abs_diff(out.direct, out.product_rule);
    out.printed_residual = max_abs_diff(out.direct, out.printed);
    return out;
}

EpsilonCorrections epsilon_corrections(const Metric& g, const Dilation& d)
{
    const double E = g.E, F = g.F, G = g.G;
    const double lu = d.lambda_u, lv = d.lambda_v;
    const double k = 1.0 / (d.lambda * g.W2());
    EpsilonCorrections e;
    e.t1_11 = k * (E * G * lu - 2.0 * F * F * lu + F * E * lv);
    e.t2_11 = k * (E * F * lu - E * E * lv);
    e.t1_12 = k * (E * G * lv - F * G * lu);
    e.t2_12 = k * (E * G * lu - F * E * lv);
    e.t1_22 = k * (G * F * lv - G * G * lu);
    e.t2_22 = k * (E * G * lv - 2.0 * F * F * lv + F * G * lu);
    return e;
}

EpsilonCorrections epsilon_corrections(const ConformalPair& pair, double u, double v)
{
    const auto p = evaluate_pair(pair, u, v);
    return epsilon_corrections(p.source_metric, p.dilation);
}

BarredChristoffel barred_christoffel(const ConformalPair& pair, double u, double v)
{
    const auto p = evaluate_pair(pair, u, v);
    const auto gamma = christoffel(p.source_metric, pair.w_min());
    const auto eps = epsilon_corrections(p.source_metric, p.dilation);
    BarredChristoffel out;
    out.via_law.t1_11 = gamma.t1_11 + eps.t1_11;
    out.via_law.t2_11 = gamma.t2_11 + eps.t2_11;
    out.via_law.t1_12 = gamma.t1_12 + eps.t1_12;
    out.via_law.t2_12 = gamma.t2_12 + eps.t2_12;
    out.via_law.t1_22 = gamma.t1_22 + eps.t1_22;
    out.via_law.t2_22 = gamma.t2_22 + eps.t2_22;
    out.direct = christoffel(p.image_metric, pair.w_min());
    out.residual = out.via_law.max_abs_diff(out.direct);
    return out;
}

CurveOnSurface image_curve(const ConformalPair& pair, const CurveOnSurface& curve)
{
    return reparameterize(pair.image(), curve.curve());
}

RectifyingImageCondition rectifying_image_condition(const ConformalPair& pair, const CurveOnSurface& curve,
                                                    const CurveOnSurface& image, double s, double kappa_min)
{
    if (!pair.supports_ambient_theorems()) {
        throw Error(ErrorKind::Capability, "rectifying image condition requires an ambient-mode pair");
    }
    const auto& J = *pair.ambient();
    const auto point = curve.at_arclength(s);
    const auto fr = frenet(point, kappa_min);
    const double mu_over_kappa = point.alpha.dot(fr.binormal) / fr.curvature;

    const auto pp = evaluate_pair(pair, point.u, point.v);
    const auto& d = pp.dilation;
    const auto along = J.jacobian_along(pair.source(), point.u, point.v);
    const Vec3& pu = pp.source_jet.pu;
    const Vec3& pv = pp.source_jet.pv;

    const Vec3 Au = d.lambda * (along.J * pu);
    const Vec3 Av = d.lambda * (along.J * pv);
    // λ_j J_* φ_i + λ ∂J_*/∂j φ_i
    auto B = [&](const Vec3& phi_i, bool wrt_u) -> Vec3 {
        return wrt_u ? Vec3(d.lambda_u * (along.J * phi_i) + d.lambda * (along.dJ_du * phi_i))
                     : Vec3(d.lambda_v * (along.J * phi_i) + d.lambda * (along.dJ_dv * phi_i));
    };
    const double u1 = point.up, v1 = point.vp;
    const Vec3 sum = u1 * u1 * u1 * Au.cross(B(pu, true)) + 2.0 * u1 * u1 * v1 * Au.cross(B(pu, false))
                   + u1 * v1 * v1 * Au.cross(B(pv, false)) + u1 * u1 * v1 * Av.cross(B(pu, true))
                   + 2.0 * u1 * v1 * v1 * Av.cross(B(pv, true)) + v1 * v1 * v1 * Av.cross(B(pv, false));

    RectifyingImageCondition out;
    out.correction = mu_over_kappa * sum;
    out.rhs = out.correction + d.lambda * (J.jacobian(point.alpha) * point.alpha);
    out.image_point = J.apply(point.alpha);
    out.difference = (out.rhs - out.image_point).norm();

    const auto ip = image.at_parameter(point.t);
    const auto ifr = frenet(ip, kappa_min);
    out.image_residual = ip.alpha.dot(ifr.normal);
    return out;
}

RectifyingImageCondition rectifying_image_condition(const ConformalPair& pair, const CurveOnSurface& curve, double s)
{
    return rectifying_image_condition(pair, curve, image_curve(pair, curve), s);
}

} // namespace rectconf
