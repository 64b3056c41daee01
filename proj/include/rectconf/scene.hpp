#pragma once

#include "rectconf/theorems.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace rectconf {

/// Scene-loading failure; `pointer` locates the offending JSON value (RFC 6901).
class SceneError : public Error {
public:
    SceneError(ErrorKind kind, std::string pointer, const std::string& message);

    [[nodiscard]] const std::string& pointer() const noexcept { return pointer_; }

private:
    std::string pointer_;
};

struct SceneSurface {
    std::string name;
    SurfacePatch patch;
};

struct SceneCurve {
    std::string name;
    std::string surface;
    CurveOnSurface curve;
};

struct ScenePair {
    std::string name;
    std::string source;
    std::string image; ///< surface name in patch mode, empty in ambient mode
    ConformalPair pair;
};

struct SceneCheck {
    std::optional<std::string> theorem_id;
    std::string pair;
    std::optional<std::string> curve;
    CheckOptions options;
};

struct SceneSettings {
    int samples = 64;
    double tol = 1e-7;
    double rect_tol = kDefaultRectTol;
    int grid = 16;
    double conf_tol = 1e-8;
};

/// Validated scene: every expression parsed, every reference resolved, every pair built.
class Scene {
public:
    std::vector<SceneSurface> surfaces;
    std::vector<SceneCurve> curves;
    std::vector<ScenePair> pairs;
    std::vector<SceneCheck> checks;
    SceneSettings settings;

    [[nodiscard]] const SceneSurface* find_surface(std::string_view name) const;
    [[nodiscard]] const SceneCurve* find_curve(std::string_view name) const;
    [[nodiscard]] const ScenePair* find_pair(std::string_view name) const;
};

Scene parse_scene(std::string_view json_text);
Scene load_scene(const std::filesystem::path& path);

struct VerifyOptions {
    std::optional<std::string> selector; ///< theorem id, pair name, curve name or "pair:curve"
    std::optional<int> samples;
    std::optional<double> tol;
    int workers = 1;
};

/// Check jobs selected from the scene; throws Usage when a selector matches nothing.
std::vector<CheckJob> select_checks(const Scene& scene, const VerifyOptions& options);

std::vector<DeviationReport> run_all(const Scene& scene, const VerifyOptions& options = {});

/// Holds always passes; Documented passes unless strict; Skipped passes; everything else fails.
bool reports_pass(const std::vector<DeviationReport>& reports, bool strict);

struct AnalysisRow {
    double s = 0.0, u = 0.0, v = 0.0;
    double kappa = 0.0, tau = 0.0;
    double kappa_n = 0.0, kappa_g = 0.0;
    double xi = 0.0, mu = 0.0, alpha_dot_n = 0.0;
    std::string flag; ///< empty, or the error kind that prevented Frenet data
};

struct CurveAnalysis {
    std::string curve;
    std::vector<AnalysisRow> rows;
    int flagged = 0;
    std::optional<RectifyingDecomposition> decomposition; ///< absent when any row is flagged
    double length = 0.0;
};

CurveAnalysis analyze_curve(const Scene& scene, const std::string& curve, int samples);

std::string format_double(double x);

std::string analysis_csv(const CurveAnalysis& analysis);
std::string analysis_summary_json(const CurveAnalysis& analysis);
std::string analysis_json(const CurveAnalysis& analysis);
std::string reports_json(const std::vector<DeviationReport>& reports);
std::string reports_csv(const std::vector<DeviationReport>& reports);
std::string pair_info_json(const Scene& scene, const std::optional<std::string>& name);
std::string surface_info_json(const Scene& scene, const std::optional<std::string>& name);

/// Single-line machine-readable diagnostic for the error stream.
std::string diagnostic_json(const std::exception& e);

/// 2 for input errors, 3 for numerical degeneracy.
int exit_code_for(const std::exception& e);

} // namespace rectconf
