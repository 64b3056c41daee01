#pragma once

// Shared fixtures and brute-force oracles for the test suites. Nothing here calls
// the library's formula code paths except to build patches and jets.

#include "rectconf/scene.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace rectconf::testing {

inline constexpr double kPi = std::numbers::pi;

inline SurfacePatch plane()
{
    return SurfacePatch::parse("u", "v", "0", {-2.0, 2.0, -2.0, 2.0});
}

/// Latitude u, longitude v.
inline SurfacePatch sphere()
{
    return SurfacePatch::parse("cos(u)*cos(v)", "cos(u)*sin(v)", "sin(u)", {-1.2, 1.2, -3.0, 3.0});
}

inline SurfacePatch cylinder()
{
    return SurfacePatch::parse("cos(v)", "sin(v)", "u", {-3.0, 3.0, -3.0, 3.0});
}

inline SurfacePatch cone()
{
    return SurfacePatch::parse("u*cos(v)", "u*sin(v)", "u", {0.5, 2.5, -1.5, 1.5});
}

/// Cylinder in Mercator height over the sphere's latitude chart.
inline SurfacePatch mercator()
{
    return SurfacePatch::parse("cos(v)", "sin(v)", "log(sec(u) + tan(u))", {-1.2, 1.2, -3.0, 3.0});
}

/// Monge saddle z = uv; F = uv is non-zero off the axes.
inline SurfacePatch saddle()
{
    return SurfacePatch::parse("u", "v", "u*v", {-1.0, 1.0, -1.0, 1.0});
}

inline SurfacePatch paraboloid()
{
    return SurfacePatch::parse("u", "v", "(u^2 + v^2)/2", {-1.2, 1.2, -1.2, 1.2});
}

inline CurveOnSurface on(const SurfacePatch& patch, std::string_view u, std::string_view v, double t0, double t1)
{
    return reparameterize(patch, ParamCurve::parse(u, v, t0, t1));
}

/// Latitude circle u = π/6 at unit speed in t.
inline CurveOnSurface latitude()
{
    return on(sphere(), "pi/6", "t/cos(pi/6)", -2.0, 2.0);
}

inline CurveOnSurface cone_geodesic()
{
    return on(cone(), "sec(t/sqrt(2))", "t", -0.7, 0.7);
}

inline CurveOnSurface sec_construction()
{
    return on(cone(), "sec(t)/sqrt(2)", "sqrt(2)*t", -0.5, 0.5);
}

/// Γᵏᵢⱼ from the Gram system [[E, F], [F, G]] x = (φ_ij·φ_u, φ_ij·φ_v).
inline ConnectionTable gram_christoffel(const SurfaceJet& j)
{
    Eigen::Matrix2d gram;
    gram << j.pu.dot(j.pu), j.pu.dot(j.pv), j.pu.dot(j.pv), j.pv.dot(j.pv);
    auto solve = [&](const Vec3& second) {
        const Eigen::Vector2d rhs(second.dot(j.pu), second.dot(j.pv));
        return Eigen::Vector2d(gram.fullPivLu().solve(rhs));
    };
    const auto g11 = solve(j.puu);
    const auto g12 = solve(j.puv);
    const auto g22 = solve(j.pvv);
    ConnectionTable c;
    c.t1_11 = g11[0];
    c.t2_11 = g11[1];
    c.t1_12 = g12[0];
    c.t2_12 = g12[1];
    c.t1_22 = g22[0];
    c.t2_22 = g22[1];
    return c;
}

/// Uniform chart point strictly inside the domain.
inline std::pair<double, double> random_point(const SurfacePatch& p, std::mt19937_64& rng)
{
    const auto& d = p.domain();
    std::uniform_real_distribution<double> U(d.u_min, d.u_max);
    std::uniform_real_distribution<double> V(d.v_min, d.v_max);
    return {U(rng), V(rng)};
}

/// Five-point second difference of the curve position in arc length.
inline Vec3 fd_second(const CurveOnSurface& c, double s, double h)
{
    auto a = [&](double x) { return c.at_arclength(x).alpha; };
    return (-a(s + 2 * h) + 16.0 * a(s + h) - 30.0 * a(s) + 16.0 * a(s - h) - a(s - 2 * h)) / (12.0 * h * h);
}

} // namespace rectconf::testing
