#pragma once

#include "rectconf/conformal.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rectconf {

enum class Verdict { Holds, Deviates, Documented, Skipped, Error };

/// "holds-within-tol", "deviates", "formula-documented-discrepancy", "skipped", "error".
const char* to_string(Verdict v) noexcept;

namespace theorem_id {
inline constexpr const char* kRectifyingImage = "T1_RECTIFYING_IMAGE";
inline constexpr const char* kNormalComponent = "NORMAL_COMPONENT";
inline constexpr const char* kNormalComponentQ15 = "NORMAL_COMPONENT_Q15";
inline constexpr const char* kNormalComponentHomothety = "NORMAL_COMPONENT_HOMOTHETY";
inline constexpr const char* kNormalComponentIsometry = "NORMAL_COMPONENT_ISOMETRY";
inline constexpr const char* kTangential = "TANGENTIAL";
inline constexpr const char* kTangentialT1 = "TANGENTIAL_T1";
inline constexpr const char* kTangentialT2 = "TANGENTIAL_T2";
inline constexpr const char* kNormalCurvature = "NORMAL_CURVATURE";
inline constexpr const char* kNormalCurvatureQ21 = "NORMAL_CURVATURE_Q21";
inline constexpr const char* kGeodesicCurvature = "GEODESIC_CURVATURE";
inline constexpr const char* kGeodesicCurvatureHomothety = "GEODESIC_CURVATURE_HOMOTHETY";
inline constexpr const char* kGeodesicCurvatureIsometry = "GEODESIC_CURVATURE_ISOMETRY";
inline constexpr const char* kChristoffelConformal = "CHRISTOFFEL_CONFORMAL";
inline constexpr const char* kChristoffelIsometry = "CHRISTOFFEL_ISOMETRY";
inline constexpr const char* kMetricDerivatives = "METRIC_DERIVATIVES";
} // namespace theorem_id

/// Every theorem id in the order `run_checks` expands a check without an explicit id.
const std::vector<std::string>& all_theorem_ids();
bool is_theorem_id(std::string_view id);

struct Stats {
    double min = 0.0, max = 0.0, mean = 0.0;
};

Stats stats_of(const std::vector<double>& values);

struct DeviationReport {
    std::string theorem_id;
    std::string pair;
    std::string curve;
    int samples = 0;
    Stats lhs_stats;
    Stats rhs_stats;
    double residual_max = 0.0;
    double residual_mean = 0.0;
    Verdict verdict = Verdict::Skipped;
    double tol = 0.0;
    std::string classification;
    std::vector<std::pair<std::string, double>> extras;
    std::vector<std::string> notes;
    std::optional<ErrorKind> error_kind;
};

struct CheckOptions {
    int samples = 64;
    double tol = 1e-7;
    double rect_tol = kDefaultRectTol;
    double kappa_min = kDefaultKappaMin;
    double tangent_a = 1.0; ///< T = aφ_u + bφ_v
    double tangent_b = 0.0;
};

struct CheckContext {
    std::string pair_name;
    std::string curve_name;
    const ConformalPair* pair = nullptr;
    const CurveOnSurface* curve = nullptr; ///< on the pair's source patch
};

/// Per-sample ᾱ·N̄ data over the source curve; a formula-level check of the conformal normal-component law.
DeviationReport check_normal_component(const CheckContext& ctx, const CheckOptions& options);
DeviationReport check_normal_component_q15(const CheckContext& ctx, const CheckOptions& options);
DeviationReport check_normal_component_homothety(const CheckContext& ctx, const CheckOptions& options);
DeviationReport check_normal_component_isometry(const CheckContext& ctx, const CheckOptions& options);

DeviationReport check_rectifying_image(const CheckContext& ctx, const CheckOptions& options);

/// Combined identity ᾱ·T̄ − α·T against its printed right side.
DeviationReport check_tangential(const CheckContext& ctx, const CheckOptions& options);
/// Component identities along φ_u (T1) and φ_v (T2), with their v′ and u′ weights.
DeviationReport check_tangential_t1(const CheckContext& ctx, const CheckOptions& options);
DeviationReport check_tangential_t2(const CheckContext& ctx, const CheckOptions& options);

DeviationReport check_normal_curvature(const CheckContext& ctx, const CheckOptions& options);
DeviationReport check_normal_curvature_q21(const CheckContext& ctx, const CheckOptions& options);

DeviationReport check_geodesic_curvature(const CheckContext& ctx, const CheckOptions& options);
DeviationReport check_geodesic_curvature_homothety(const CheckContext& ctx, const CheckOptions& options);
DeviationReport check_geodesic_curvature_isometry(const CheckContext& ctx, const CheckOptions& options);

/// Grid checks over the pair's chart; the curve is not used.
DeviationReport check_christoffel_conformal(const CheckContext& ctx, const CheckOptions& options);
DeviationReport check_christoffel_isometry(const CheckContext& ctx, const CheckOptions& options);
DeviationReport check_metric_derivatives(const CheckContext& ctx, const CheckOptions& options);

/// Runs one theorem by id. Errors inside the check become reports with verdict Error;
/// an id outside the registry throws ErrorKind::Usage.
DeviationReport run_check(const std::string& id, const CheckContext& ctx, const CheckOptions& options);

struct CheckJob {
    std::optional<std::string> theorem_id; ///< empty: every theorem applicable to the pair
    CheckContext context;
    CheckOptions options;
};

/**
 * Runs the jobs and returns reports in job order, ids in `all_theorem_ids()` order
 * within a job. When a job names no theorem, checks whose preconditions the pair or
 * curve does not meet come back as Skipped instead of Error.
 */
std::vector<DeviationReport> run_checks(const std::vector<CheckJob>& jobs, int workers = 1);

} // namespace rectconf
