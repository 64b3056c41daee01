#pragma once

#include "rectconf/curves.hpp"

#include <optional>
#include <string>

namespace rectconf {

/// Differentiable map of E³ given by three expressions in (x, y, z).
class AmbientMap {
public:
    AmbientMap(Expr X, Expr Y, Expr Z);

    static AmbientMap parse(std::string_view X, std::string_view Y, std::string_view Z);

    [[nodiscard]] const std::array<Expr, 3>& components() const noexcept { return components_; }

    /// Image patch J∘φ, built by symbolic substitution.
    [[nodiscard]] SurfacePatch compose(const SurfacePatch& source) const;

    [[nodiscard]] Vec3 apply(const Vec3& x) const;

    /// Jacobian J_* at an ambient point.
    [[nodiscard]] Mat3 jacobian(const Vec3& x) const;

    /// J_* pulled back along the patch, with its chart derivatives ∂J_*/∂u and ∂J_*/∂v.
    struct AlongPatch {
        Mat3 J;
        Mat3 dJ_du;
        Mat3 dJ_dv;
    };

    [[nodiscard]] AlongPatch jacobian_along(const SurfacePatch& patch, double u, double v) const;

private:
    std::array<Expr, 3> components_;
    std::array<Expr, 9> jacobian_; ///< row-major ∂X_i/∂x_j
};

enum class PairMode { Ambient, Patch };

/// Most specific class the dilation admits: isometric ⊂ homothetic ⊂ conformal.
enum class Classification { Conformal, Homothetic, Isometric };

const char* to_string(PairMode mode) noexcept;
const char* to_string(Classification c) noexcept;

struct PairOptions {
    int grid = 16;            ///< grid points per chart direction
    double conf_tol = 1e-8;   ///< acceptance threshold on the metric residual
    double const_tol = 1e-9;  ///< spread of λ under which it counts as constant
    double w_min = kDefaultWMin;
    std::optional<Expr> lambda; ///< user-declared dilation in (u, v), cross-checked only
};

struct GridPoint {
    double u = 0.0, v = 0.0;
};

class NonConformalError : public Error {
public:
    NonConformalError(double residual, GridPoint worst, double tol);

    [[nodiscard]] double residual() const noexcept { return residual_; }
    [[nodiscard]] GridPoint worst() const noexcept { return worst_; }

private:
    double residual_;
    GridPoint worst_;
};

/**
 * Accepted conformal correspondence between a source patch and its image over the
 * same chart. Instances exist only after the metric test passed on the grid.
 */
class ConformalPair {
public:
    [[nodiscard]] const SurfacePatch& source() const noexcept { return source_; }
    [[nodiscard]] const SurfacePatch& image() const noexcept { return image_; }
    [[nodiscard]] PairMode mode() const noexcept { return mode_; }
    [[nodiscard]] const std::optional<AmbientMap>& ambient() const noexcept { return map_; }

    [[nodiscard]] Classification classification() const noexcept { return class_; }
    [[nodiscard]] bool is_homothetic() const noexcept { return class_ != Classification::Conformal; }
    [[nodiscard]] bool is_isometric() const noexcept { return class_ == Classification::Isometric; }

    /// The rectifying-image condition and the tangential identity need J_*; only ambient pairs carry it.
    [[nodiscard]] bool supports_ambient_theorems() const noexcept { return mode_ == PairMode::Ambient; }

    [[nodiscard]] double conformality_residual() const noexcept { return residual_; }
    [[nodiscard]] GridPoint worst_point() const noexcept { return worst_; }
    [[nodiscard]] double lambda_min() const noexcept { return lambda_min_; }
    [[nodiscard]] double lambda_max() const noexcept { return lambda_max_; }
    [[nodiscard]] int grid() const noexcept { return grid_; }
    [[nodiscard]] double w_min() const noexcept { return w_min_; }
    /// Max relative error of a user-declared λ against the recovered one, if one was given.
    [[nodiscard]] std::optional<double> lambda_cross_check() const noexcept { return lambda_check_; }

private:
    friend ConformalPair build_pair_impl(const SurfacePatch&, const SurfacePatch&, PairMode, std::optional<AmbientMap>,
                                         const PairOptions&);

    ConformalPair(SurfacePatch source, SurfacePatch image) : source_(std::move(source)), image_(std::move(image)) {}

    SurfacePatch source_;
    SurfacePatch image_;
    PairMode mode_ = PairMode::Patch;
    std::optional<AmbientMap> map_;
    Classification class_ = Classification::Conformal;
    double residual_ = 0.0;
    GridPoint worst_;
    double lambda_min_ = 0.0, lambda_max_ = 0.0;
    int grid_ = 0;
    double w_min_ = kDefaultWMin;
    std::optional<double> lambda_check_;
};

/// Ambient mode: image := J∘source.
ConformalPair build_pair(const SurfacePatch& source, const AmbientMap& map, const PairOptions& options = {});
/// Patch mode: explicit image patch over the same chart.
ConformalPair build_pair(const SurfacePatch& source, const SurfacePatch& image, const PairOptions& options = {});

/// λ = √(Ē/E) and its chart partials from the jets of Ē/E.
struct Dilation {
    double lambda = 1.0;
    double lambda_u = 0.0;
    double lambda_v = 0.0;
};

/// Both surfaces evaluated at one chart point.
struct PairPoint {
    SurfaceJet source_jet;
    SurfaceJet image_jet;
    Metric source_metric;
    Metric image_metric;
    Dilation dilation;
};

PairPoint evaluate_pair(const ConformalPair& pair, double u, double v);

Dilation dilation(const ConformalPair& pair, double u, double v);

/// Order: E_u, E_v, F_u, F_v, G_u, G_v.
using MetricPartials = std::array<double, 6>;

struct MetricCoefficientDerivatives {
    MetricPartials direct{};       ///< jets of the image metric
    MetricPartials product_rule{}; ///< 2λλ_i g + λ² g_i
    MetricPartials printed{};      ///< 2λλ_i g + λ² g_v in every entry, as commonly printed
    double product_rule_residual = 0.0; ///< max |direct − product_rule|
    double printed_residual = 0.0;      ///< max |direct − printed|
};

MetricCoefficientDerivatives metric_coefficient_derivatives(const ConformalPair& pair, double u, double v);

/// Additive change of the Christoffel symbols under the metric scaling by λ².
struct EpsilonCorrections : ConnectionTable {};

EpsilonCorrections epsilon_corrections(const Metric& source, const Dilation& d);
EpsilonCorrections epsilon_corrections(const ConformalPair& pair, double u, double v);

struct BarredChristoffel {
    Christoffel via_law; ///< Γ + ε
    Christoffel direct;  ///< Christoffel symbols of the image patch
    double residual = 0.0;
};

BarredChristoffel barred_christoffel(const ConformalPair& pair, double u, double v);

struct RectifyingImageCondition {
    Vec3 rhs = Vec3::Zero();         ///< (μ/κ)·[six λJ_*φ_i × (...) terms] + λJ_*(α)
    Vec3 correction = Vec3::Zero();  ///< the μ/κ-weighted sum alone
    Vec3 image_point = Vec3::Zero(); ///< J(α(s))
    double difference = 0.0;         ///< |rhs − image_point|
    double image_residual = 0.0;     ///< ᾱ·n̄_c of the image curve
};

/// Image of a source curve: same chart curve on the image patch, with its own arc-length table.
CurveOnSurface image_curve(const ConformalPair& pair, const CurveOnSurface& curve);

RectifyingImageCondition rectifying_image_condition(const ConformalPair& pair, const CurveOnSurface& curve,
                                                    const CurveOnSurface& image, double s,
                                                    double kappa_min = kDefaultKappaMin);
RectifyingImageCondition rectifying_image_condition(const ConformalPair& pair, const CurveOnSurface& curve, double s);

} // namespace rectconf
