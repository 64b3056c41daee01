#pragma once

#include "rectconf/geometry.hpp"

#include <memory>
#include <vector>

namespace rectconf {

inline constexpr double kDefaultKappaMin = 1e-8;
inline constexpr double kDefaultRectTol = 1e-6;

/// Chart curve t ↦ (u(t), v(t)) over [t0, t1].
struct ParamCurve {
    Expr u;
    Expr v;
    double t0 = 0.0;
    double t1 = 1.0;

    static ParamCurve parse(std::string_view u, std::string_view v, double t0, double t1);
};

class RegularityError : public Error {
public:
    RegularityError(const std::string& what, double t);
    [[nodiscard]] double t() const noexcept { return t_; }

private:
    double t_;
};

class FrenetUndefinedError : public Error {
public:
    FrenetUndefinedError(double s, double kappa);
    [[nodiscard]] double s() const noexcept { return s_; }

private:
    double s_;
};

struct ReparamOptions {
    int panels = 512;      ///< initial Simpson panel count
    double tol = 1e-10;    ///< relative change in total length that stops panel doubling
    double c_min = 1e-8;   ///< minimum |dα/dt|
    int max_panels = 1 << 16;
};

/// Everything about the curve at one parameter, with chart and ambient derivatives taken in arc length.
struct CurvePoint {
    double t = 0.0, s = 0.0;
    double u = 0.0, v = 0.0;
    double up = 0, vp = 0, upp = 0, vpp = 0, uppp = 0, vppp = 0;
    Vec3 alpha = Vec3::Zero();
    Vec3 d1 = Vec3::Zero(), d2 = Vec3::Zero(), d3 = Vec3::Zero();
    double speed = 0.0;   ///< ds/dt
    double speed_t = 0.0; ///< d²s/dt²
    double speed_tt = 0.0;///< d³s/dt³
};

/**
 * A chart curve on a patch together with its arc-length table.
 *
 * The table maps the Simpson nodes t_k to cumulative arc length s_k. Queries by
 * arc length invert the table with Newton steps; all derivatives at the
 * resulting parameter are exact jets pushed through the chain rule.
 */
class CurveOnSurface {
public:
    CurveOnSurface(SurfacePatch patch, ParamCurve curve, std::vector<double> nodes_t, std::vector<double> nodes_s);

    [[nodiscard]] const SurfacePatch& patch() const noexcept { return patch_; }
    [[nodiscard]] const ParamCurve& curve() const noexcept { return curve_; }
    [[nodiscard]] double length() const noexcept { return nodes_s_.back(); }
    [[nodiscard]] std::size_t panels() const noexcept { return nodes_t_.size() - 1; }
    [[nodiscard]] const std::vector<double>& table_t() const noexcept { return nodes_t_; }
    [[nodiscard]] const std::vector<double>& table_s() const noexcept { return nodes_s_; }

    [[nodiscard]] double arclength_at(double t) const;
    [[nodiscard]] double parameter_at(double s) const;

    [[nodiscard]] CurvePoint at_parameter(double t) const;
    [[nodiscard]] CurvePoint at_arclength(double s) const;

    /// n evenly spaced arc-length samples including both ends (midpoint when n == 1).
    [[nodiscard]] std::vector<double> sample_grid(int n) const;

private:
    SurfacePatch patch_;
    ParamCurve curve_;
    std::vector<double> nodes_t_;
    std::vector<double> nodes_s_;
};

/// |dα/dt| together with the curve point data at parameter t (no arc-length value).
CurvePoint evaluate_curve(const SurfacePatch& patch, const ParamCurve& curve, double t);

CurveOnSurface reparameterize(const SurfacePatch& patch, const ParamCurve& curve, const ReparamOptions& options = {});

struct FrenetData {
    double s = 0.0, t = 0.0;
    Vec3 tangent = Vec3::Zero();
    Vec3 normal = Vec3::Zero();
    Vec3 binormal = Vec3::Zero();
    double curvature = 0.0;
    double torsion = 0.0;
    double up = 0, vp = 0, upp = 0, vpp = 0;
};

FrenetData frenet(const CurvePoint& point, double kappa_min = kDefaultKappaMin);
FrenetData frenet(const CurveOnSurface& curve, double s, double kappa_min = kDefaultKappaMin);

/// κ_n = u′²L + 2u′v′M + v′²N.
double normal_curvature(const CurvePoint& point, const SurfacePatch& patch, double w_min = kDefaultWMin);
double normal_curvature(const CurveOnSurface& curve, double s);

/// Geodesic curvature from the Christoffel symbols and the chart derivatives (sign follows n̂ × α′).
double geodesic_curvature(const CurvePoint& point, const SurfacePatch& patch, double w_min = kDefaultWMin);
double geodesic_curvature(const CurveOnSurface& curve, double s);

/**
 * Binormal assembled from chart cross products:
 * (1/κ)[(u′v″ − u″v′) φ_u×φ_v + u′³ φ_u×φ_uu + 2u′²v′ φ_u×φ_uv + u′v′² φ_u×φ_vv
 *       + u′²v′ φ_v×φ_uu + 2u′v′² φ_v×φ_uv + v′³ φ_v×φ_vv].
 */
Vec3 binormal_from_chart(const CurveOnSurface& curve, double s, double kappa_min = kDefaultKappaMin);

struct RectifyingSample {
    double s = 0.0;
    double xi = 0.0;            ///< α·t̂
    double mu = 0.0;            ///< α·b̂
    double mu_over_kappa = 0.0;
    double residual = 0.0;      ///< α·n̂_c
    double curvature = 0.0;
    double torsion = 0.0;
};

struct RectifyingDecomposition {
    std::vector<RectifyingSample> samples;
    double max_abs_residual = 0.0;
    double max_xi_prime_dev = 0.0;   ///< max |ξ′ − 1| over interior samples
    double max_abs_mu_prime = 0.0;   ///< max |μ′| over interior samples
    double max_chen_product = 0.0;   ///< max |ξκ − μτ|
    double max_reconstruction = 0.0; ///< max |α − (ξt̂ + μb̂)|
    double rect_tol = kDefaultRectTol;
    bool is_rectifying = false;
};

RectifyingDecomposition rectifying_decompose(const CurveOnSurface& curve, int samples,
                                             double rect_tol = kDefaultRectTol,
                                             double kappa_min = kDefaultKappaMin);

} // namespace rectconf
