// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any criterion fails.

#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>

using namespace rectconf;
using namespace rectconf::testing;

namespace {

using Clock = std::chrono::steady_clock;

// Pinned tolerances.
constexpr double kChristoffelOracleTol = 1e-9;
constexpr double kChristoffelOracleSeconds = 5.0;
constexpr double kMercatorLawTol = 1e-7;
constexpr double kMercatorSpotTol = 1e-9;
constexpr double kIsometryTol = 1e-9;
constexpr double kHomothetyTol = 1e-8;
constexpr double kCurvatureOracleTol = 1e-7;
constexpr double kLatitudeValueTol = 1e-6;
constexpr double kRectResidualTol = 1e-6;
constexpr double kChenTol = 1e-5;
constexpr double kNormalComponentTol = 1e-7;
constexpr double kGeodesicTwoPathTol = 1e-7;
constexpr double kSuiteSeconds = 60.0;
constexpr int kSamples = 64;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

Scene scene(const std::string& name)
{
    return load_scene(std::string(RECTCONF_SCENE_DIR) + "/" + name);
}

std::vector<DeviationReport> run(const std::string& file, std::optional<std::string> selector = {})
{
    VerifyOptions o;
    o.selector = std::move(selector);
    o.samples = kSamples;
    return run_all(scene(file), o);
}

double extra(const DeviationReport& r, std::string_view name)
{
    for (const auto& [key, value] : r.extras) {
        if (key == name) return value;
    }
    throw std::runtime_error("report " + r.theorem_id + " lacks '" + std::string(name) + "'");
}

bool is_one_of(const std::string& id, std::initializer_list<const char*> ids)
{
    for (const char* x : ids) {
        if (id == x) return true;
    }
    return false;
}

Outcome christoffel_oracle()
{
    const auto start = Clock::now();
    std::mt19937_64 rng(1001);
    const std::vector<SurfacePatch> patches{plane(), sphere(), cylinder(), cone()};
    double worst = 0.0;
    for (const auto& patch : patches) {
        for (int k = 0; k < 200; ++k) {
            const auto [u, v] = random_point(patch, rng);
            const auto j = surface_jet(patch, u, v);
            worst = std::max(worst, christoffel(metric(j)).max_abs_diff(gram_christoffel(j)));
        }
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    return {worst < kChristoffelOracleTol && secs < kChristoffelOracleSeconds,
            "max|err|=" + fmt(worst) + " time=" + fmt(secs) + "s"};
}

Outcome mercator_law()
{
    PairOptions o;
    o.grid = 20;
    const auto pair = build_pair(sphere(), mercator(), o);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        for (int k = 0; k < 20; ++k) {
            const double u = -1.2 + 2.4 * i / 19.0;
            const double v = -3.0 + 6.0 * k / 19.0;
            worst = std::max(worst, barred_christoffel(pair, u, v).residual);
        }
    }
    const auto e = epsilon_corrections(pair, kPi / 4, 0.0);
    const double spot = std::max(std::abs(e.t1_11 - 1.0), std::abs(e.t1_22 + 0.5));
    return {worst < kMercatorLawTol && spot < kMercatorSpotTol,
            "grid max=" + fmt(worst) + " eps111=" + fmt(e.t1_11) + " eps122=" + fmt(e.t1_22)};
}

Outcome isometry_invariants()
{
    double worst = 0.0;
    int counted = 0;
    bool verdicts_ok = true;
    for (const char* file : {"identity.json", "isometry.json"}) {
        for (const auto& r : run(file)) {
            double value = 0.0;
            if (is_one_of(r.theorem_id, {theorem_id::kChristoffelIsometry, theorem_id::kNormalComponentIsometry,
                                         theorem_id::kGeodesicCurvatureIsometry})) {
                value = r.residual_max;
            } else if (r.theorem_id == theorem_id::kChristoffelConformal) {
                value = extra(r, "eps_max_abs");
            } else if (r.theorem_id == theorem_id::kNormalComponent) {
                value = extra(r, "h_max_abs");
            } else {
                continue;
            }
            verdicts_ok = verdicts_ok && r.verdict == Verdict::Holds;
            worst = std::max(worst, value);
            ++counted;
        }
    }
    return {verdicts_ok && counted >= 10 && worst < kIsometryTol,
            "checks=" + std::to_string(counted) + " max residual=" + fmt(worst)};
}

Outcome homothety_invariants()
{
    double worst = 0.0;
    int counted = 0;
    bool verdicts_ok = true;
    for (const auto& r : run("homothety.json")) {
        double value = 0.0;
        if (r.verdict == Verdict::Skipped) continue;
        if (is_one_of(r.theorem_id, {theorem_id::kNormalComponentHomothety, theorem_id::kGeodesicCurvatureHomothety})) {
            value = r.residual_max;
        } else if (r.theorem_id == theorem_id::kChristoffelConformal) {
            value = extra(r, "eps_max_abs");
        } else {
            continue;
        }
        verdicts_ok = verdicts_ok && r.verdict == Verdict::Holds;
        worst = std::max(worst, value);
        ++counted;
    }
    return {verdicts_ok && counted >= 5 && worst < kHomothetyTol,
            "checks=" + std::to_string(counted) + " max residual=" + fmt(worst)};
}

Outcome curvature_oracles()
{
    const std::vector<CurveOnSurface> fixtures{latitude(), cone_geodesic(), sec_construction(),
                                               on(saddle(), "0.6*cos(t)", "0.5*sin(t)", 0.0, 6.0),
                                               on(mercator(), "0.4*sin(t)", "t", -2.0, 2.0)};
    double worst = 0.0;
    for (const auto& c : fixtures) {
        for (double s : c.sample_grid(kSamples)) {
            const auto p = c.at_arclength(s);
            const Vec3 n = fundamental_forms(c.patch(), p.u, p.v).normal;
            worst = std::max(worst, std::abs(geodesic_curvature(c, s) - cross_dot(n, p.d1, p.d2)));
            worst = std::max(worst, std::abs(normal_curvature(c, s) - p.d2.dot(n)));
        }
    }
    const auto lat = latitude();
    const double kg = geodesic_curvature(lat, 0.5 * lat.length());
    const bool value_ok = std::abs(kg + std::tan(kPi / 6)) < kLatitudeValueTol;
    return {worst < kCurvatureOracleTol && value_ok, "max residual=" + fmt(worst) + " latitude kappa_g=" + fmt(kg)};
}

Outcome rectifying_fixtures()
{
    double residual = 0.0, xi = 0.0, mu = 0.0;
    for (const auto& c : {cone_geodesic(), sec_construction()}) {
        const auto d = rectifying_decompose(c, kSamples);
        residual = std::max(residual, d.max_abs_residual);
        xi = std::max(xi, d.max_xi_prime_dev);
        mu = std::max(mu, d.max_abs_mu_prime);
    }
    return {residual < kRectResidualTol && xi < kChenTol && mu < kChenTol,
            "max|a.n|=" + fmt(residual) + " max|xi'-1|=" + fmt(xi) + " max|mu'|=" + fmt(mu)};
}

Outcome normal_component_identity()
{
    double worst = 0.0;
    int counted = 0;
    for (const char* file : {"identity.json", "isometry.json", "homothety.json", "cone_mercator.json"}) {
        for (const auto& r : run(file, std::string(theorem_id::kNormalComponent))) {
            if (r.verdict == Verdict::Error && r.error_kind == ErrorKind::NonRectifying) continue;
            if (r.verdict != Verdict::Holds) {
                return {false, r.pair + "/" + r.curve + " verdict " + to_string(r.verdict)};
            }
            worst = std::max(worst, r.residual_max);
            ++counted;
        }
    }
    return {counted >= 6 && worst < kNormalComponentTol,
            "pairs x curves=" + std::to_string(counted) + " max residual=" + fmt(worst)};
}

Outcome geodesic_two_path()
{
    double printed = 0.0, corrected = 0.0;
    int counted = 0;
    for (const auto& [file, sel] : {std::pair{"mercator.json", "mercator"}, std::pair{"plane_exp.json", "exp_patch"},
                                    std::pair{"plane_exp.json", "exp_ambient"}}) {
        VerifyOptions o;
        o.selector = sel;
        o.samples = kSamples;
        for (const auto& r : run_all(scene(file), o)) {
            if (r.theorem_id != theorem_id::kGeodesicCurvature || r.verdict == Verdict::Skipped) continue;
            printed = std::max(printed, r.residual_max);
            corrected = std::max(corrected, extra(r, "corrected_residual_max"));
            ++counted;
        }
    }
    return {counted >= 4 && printed < kGeodesicTwoPathTol,
            "curves=" + std::to_string(counted) + " printed residual=" + fmt(printed) +
                " (with lambda^2 on the eps term: " + fmt(corrected) + ")"};
}

Outcome documented_discrepancies()
{
    auto collect = [] {
        auto a = run("homothety.json", std::string("scale_cone"));
        auto b = run("monge_reflection.json", std::string(theorem_id::kNormalCurvatureQ21));
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };
    const auto first = collect();
    int documented = 0;
    for (const auto& r : first) {
        if (!is_one_of(r.theorem_id, {theorem_id::kTangential, theorem_id::kTangentialT1, theorem_id::kTangentialT2,
                                      theorem_id::kNormalCurvatureQ21})
            || r.verdict == Verdict::Skipped) {
            continue;
        }
        if (r.verdict != Verdict::Documented || r.samples != kSamples || !std::isfinite(r.lhs_stats.mean)
            || !std::isfinite(r.rhs_stats.mean) || r.residual_max <= r.tol) {
            return {false, r.theorem_id + " verdict " + to_string(r.verdict)};
        }
        ++documented;
    }
    const bool deterministic = reports_json(first) == reports_json(collect());
    return {documented == 4 && deterministic,
            "documented=" + std::to_string(documented) + " deterministic=" + (deterministic ? "yes" : "no")};
}

Outcome suite_time(Clock::time_point start)
{
    const std::string cmd = std::string("\"") + RECTCONF_CLI + "\" verify \"" + RECTCONF_SCENE_DIR
                            + "/identity.json\" > /dev/null";
    const int status = std::system(cmd.c_str());
    const int code = (status != -1 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    return {code == 0 && secs < kSuiteSeconds, "wall=" + fmt(secs) + "s identity verify exit=" + std::to_string(code)};
}

} // namespace

int main()
{
    const auto start = Clock::now();
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"Christoffel symbols match the Gram-matrix oracle", christoffel_oracle},
        {"Mercator Christoffel correction law", mercator_law},
        {"isometry invariants", isometry_invariants},
        {"homothety invariants", homothety_invariants},
        {"geodesic and normal curvature oracles", curvature_oracles},
        {"rectifying fixtures satisfy Chen's conditions", rectifying_fixtures},
        {"normal-component identity on rectifying pairs", normal_component_identity},
        {"image geodesic curvature two-path equality", geodesic_two_path},
        {"documented discrepancies are reported", documented_discrepancies},
        {"suite time and identity verify exit status", [&] { return suite_time(start); }},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("criterion %2zu %s: %s | %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    o.detail.c_str());
    }
    std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
