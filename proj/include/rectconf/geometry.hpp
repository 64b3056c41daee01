#pragma once

#include "rectconf/error.hpp"
#include "rectconf/expr.hpp"

#include <Eigen/Dense>

#include <array>
#include <string_view>

namespace rectconf {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Default regularity floor for W² = EG − F².
inline constexpr double kDefaultWMin = 1e-10;

/// Numerical breakdown at a chart point (W² below the floor, vanishing dilation).
class DegeneracyError : public Error {
public:
    DegeneracyError(const std::string& what, double u, double v);

    [[nodiscard]] double u() const noexcept { return u_; }
    [[nodiscard]] double v() const noexcept { return v_; }

private:
    double u_, v_;
};

struct Domain {
    double u_min = 0.0, u_max = 1.0;
    double v_min = 0.0, v_max = 1.0;

    [[nodiscard]] bool contains(double u, double v) const noexcept;
    [[nodiscard]] bool contains(const Domain& other) const noexcept;
};

/// Parametric immersion φ(u, v) = (x, y, z) over a rectangular chart domain.
class SurfacePatch {
public:
    SurfacePatch(Expr x, Expr y, Expr z, Domain domain);

    /// Parses the three components with variable list {u, v}.
    static SurfacePatch parse(std::string_view x, std::string_view y, std::string_view z, Domain domain);

    [[nodiscard]] const Expr& component(int i) const { return components_.at(static_cast<std::size_t>(i)); }
    [[nodiscard]] const std::array<Expr, 3>& components() const noexcept { return components_; }
    [[nodiscard]] const Domain& domain() const noexcept { return domain_; }

    /// Graph form (u, v, f(u, v)).
    [[nodiscard]] bool is_monge() const noexcept;

    /// Components evaluated on arbitrary chart jets (used to compose with curves).
    [[nodiscard]] std::array<Jet3, 3> evaluate(const Jet3& u, const Jet3& v) const;

private:
    std::array<Expr, 3> components_;
    Domain domain_;
};

/// Derivative bundle of φ at one chart point; one slot per multi-index.
struct SurfaceJet {
    double u = 0.0, v = 0.0;
    std::array<Jet3, 3> components;
    Vec3 p, pu, pv, puu, puv, pvv, puuu, puuv, puvv, pvvv;
};

SurfaceJet surface_jet(const SurfacePatch& patch, double u, double v);

/// First form and its first partials.
struct Metric {
    double E = 0, F = 0, G = 0;
    double E_u = 0, E_v = 0, F_u = 0, F_v = 0, G_u = 0, G_v = 0;

    [[nodiscard]] double W2() const noexcept { return E * G - F * F; }
};

/// Metric coefficients as jets of φ_u·φ_u etc. (so the partials follow from the Leibniz rule).
Metric metric(const SurfaceJet& jet);

struct FundamentalForms {
    double E = 0, F = 0, G = 0;
    double L = 0, M = 0, N = 0;
    double W = 0;
    Vec3 normal = Vec3::Zero();
};

FundamentalForms fundamental_forms(const SurfaceJet& jet, double w_min = kDefaultWMin);
FundamentalForms fundamental_forms(const SurfacePatch& patch, double u, double v, double w_min = kDefaultWMin);

/// Six connection coefficients with symmetric lower indices. Field `t2_11` is the
/// coefficient with upper index 2 and lower indices 1,1.
struct ConnectionTable {
    double t1_11 = 0, t2_11 = 0;
    double t1_12 = 0, t2_12 = 0;
    double t1_22 = 0, t2_22 = 0;

    [[nodiscard]] std::array<double, 6> values() const noexcept { return {t1_11, t2_11, t1_12, t2_12, t1_22, t2_22}; }
    [[nodiscard]] double max_abs() const noexcept;
    [[nodiscard]] double max_abs_diff(const ConnectionTable& other) const noexcept;
};

/// Christoffel symbols of the second kind.
struct Christoffel : ConnectionTable {};

/// Christoffel symbols from the metric and its partials.
Christoffel christoffel(const Metric& g, double w_min = kDefaultWMin);
Christoffel christoffel(const SurfacePatch& patch, double u, double v, double w_min = kDefaultWMin);

/**
 * The same six symbols with the formula text as commonly printed, where the F-weighted
 * term of Γ²₁₁ uses E_v (instead of E_u) and that of Γ²₂₂ uses G_v (instead of G_u).
 * Agrees with `christoffel` whenever F = 0.
 */
Christoffel christoffel_printed(const Metric& g, double w_min = kDefaultWMin);

struct SecondFormCoefficients {
    double L = 0, M = 0, N = 0;
};

/// Monge patch second-form coefficients: the variant dividing by W² and the classical one dividing by W.
struct MongeSecondForms {
    SecondFormCoefficients printed_variant;
    SecondFormCoefficients classical;
    SecondFormCoefficients difference; ///< printed_variant − classical
    double W2 = 1.0;
};

/// Requires the patch to be (u, v, f(u, v)); throws ErrorKind::NotMonge otherwise.
MongeSecondForms monge_second_forms(const SurfacePatch& patch, double u, double v);

inline double cross_dot(const Vec3& a, const Vec3& b, const Vec3& c)
{
    return a.cross(b).dot(c);
}

} // namespace rectconf
