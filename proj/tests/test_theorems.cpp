#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace rectconf;
using namespace rectconf::testing;

namespace {

Scene scene(const std::string& name)
{
    return load_scene(std::string(RECTCONF_SCENE_DIR) + "/" + name);
}

std::vector<DeviationReport> run(const std::string& file, std::optional<std::string> selector = {}, int workers = 1)
{
    VerifyOptions o;
    o.selector = std::move(selector);
    o.workers = workers;
    return run_all(scene(file), o);
}

double extra(const DeviationReport& r, std::string_view name)
{
    for (const auto& [key, value] : r.extras) {
        if (key == name) return value;
    }
    ADD_FAILURE() << "no extra '" << name << "' in " << r.theorem_id;
    return std::nan("");
}

const DeviationReport& only(const std::vector<DeviationReport>& reports, std::string_view id, std::string_view curve)
{
    const auto it = std::find_if(reports.begin(), reports.end(),
                                 [&](const auto& r) { return r.theorem_id == id && r.curve == curve; });
    if (it == reports.end()) throw std::runtime_error("missing report " + std::string(id));
    return *it;
}

bool has_note(const DeviationReport& r, std::string_view needle)
{
    return std::any_of(r.notes.begin(), r.notes.end(),
                       [&](const std::string& n) { return n.find(needle) != std::string::npos; });
}

} // namespace

TEST(Registry, IdsAreUniqueAndKnown)
{
    const auto& ids = all_theorem_ids();
    EXPECT_EQ(ids.size(), 16u);
    for (const auto& id : ids) {
        EXPECT_TRUE(is_theorem_id(id));
        EXPECT_EQ(std::count(ids.begin(), ids.end(), id), 1);
    }
    EXPECT_FALSE(is_theorem_id("Q23"));
    EXPECT_STREQ(to_string(Verdict::Documented), "formula-documented-discrepancy");
    EXPECT_STREQ(to_string(Verdict::Holds), "holds-within-tol");
}

TEST(Stats, MinMaxMean)
{
    const auto s = stats_of({3.0, -1.0, 4.0});
    EXPECT_EQ(s.min, -1.0);
    EXPECT_EQ(s.max, 4.0);
    EXPECT_DOUBLE_EQ(s.mean, 2.0);
}

TEST(IdentityScene, EveryApplicableCheckHolds)
{
    const auto reports = run("identity.json");
    ASSERT_FALSE(reports.empty());
    int held = 0;
    for (const auto& r : reports) {
        if (r.verdict == Verdict::Skipped) continue;
        EXPECT_EQ(r.verdict, Verdict::Holds) << r.theorem_id << " " << r.curve;
        EXPECT_LT(r.residual_max, 1e-9) << r.theorem_id << " " << r.curve;
        ++held;
    }
    EXPECT_GE(held, 20);
    EXPECT_EQ(only(reports, theorem_id::kNormalCurvatureQ21, "cone_geodesic").verdict, Verdict::Skipped);
}

TEST(IsometryScene, InvariantsHold)
{
    for (const auto& r : run("isometry.json")) {
        if (r.verdict == Verdict::Skipped) continue;
        EXPECT_EQ(r.verdict, Verdict::Holds) << r.theorem_id;
        EXPECT_LT(r.residual_max, 1e-9) << r.theorem_id;
    }
}

TEST(MercatorScene, AmbientTheoremsAreSkippedInPatchMode)
{
    const auto reports = run("mercator.json");
    const auto& t1 = only(reports, theorem_id::kRectifyingImage, "latitude");
    EXPECT_EQ(t1.verdict, Verdict::Skipped);
    EXPECT_TRUE(has_note(t1, "AmbientMode")) << (t1.notes.empty() ? "" : t1.notes.front());
    EXPECT_EQ(t1.error_kind, ErrorKind::Capability);
}

TEST(MercatorScene, ExplicitAmbientTheoremIsAnError)
{
    const auto reports = run("mercator.json", std::string(theorem_id::kTangential));
    ASSERT_EQ(reports.size(), 2u);
    for (const auto& r : reports) {
        EXPECT_EQ(r.verdict, Verdict::Error);
        EXPECT_EQ(r.error_kind, ErrorKind::Capability);
    }
}

TEST(MercatorScene, ChristoffelLawAndMetricDerivativesHold)
{
    const auto reports = run("mercator.json");
    const auto& c = only(reports, theorem_id::kChristoffelConformal, "latitude");
    EXPECT_EQ(c.verdict, Verdict::Holds);
    EXPECT_LT(c.residual_max, 1e-10);
    EXPECT_GT(extra(c, "eps_max_abs"), 1.0);
    EXPECT_EQ(only(reports, theorem_id::kMetricDerivatives, "latitude").verdict, Verdict::Holds);
}

TEST(MercatorScene, GeodesicCurvatureTwoPathsDisagreeByTanCubed)
{
    // Latitude u = π/6 under λ = sec u: the printed combination misses a λ² on the ε term.
    const auto reports = run("mercator.json");
    const auto& lat = only(reports, theorem_id::kGeodesicCurvature, "latitude");
    EXPECT_EQ(lat.verdict, Verdict::Deviates);
    EXPECT_NEAR(lat.residual_max, std::pow(std::tan(kPi / 6), 3), 1e-10);
    EXPECT_LT(extra(lat, "corrected_residual_max"), 1e-10);
    EXPECT_LT(extra(lat, "source_oracle_residual_max"), 1e-10);

    // The equator is a geodesic on both surfaces; both paths agree.
    const auto& eq = only(reports, theorem_id::kGeodesicCurvature, "equator");
    EXPECT_EQ(eq.verdict, Verdict::Holds);
}

TEST(PlaneExpScene, GeodesicCurvatureOnCircleDeviates)
{
    const auto reports = run("plane_exp.json", std::string("exp_patch:circle"));
    const auto& r = only(reports, theorem_id::kGeodesicCurvature, "circle");
    EXPECT_EQ(r.verdict, Verdict::Deviates);
    EXPECT_GT(r.residual_max, 0.1);
    EXPECT_LT(extra(r, "corrected_residual_max"), 1e-9);
}

TEST(ConeMercatorScene, NormalComponentIdentityHolds)
{
    const auto reports = run("cone_mercator.json");
    for (const char* curve : {"cone_geodesic", "sec_construction"}) {
        const auto& r = only(reports, theorem_id::kNormalComponent, curve);
        EXPECT_EQ(r.verdict, Verdict::Holds) << curve;
        EXPECT_LT(r.residual_max, 1e-9) << curve;
        EXPECT_GT(extra(r, "h_max_abs"), 1e-3) << curve;
        const auto& chart = only(reports, theorem_id::kNormalComponentQ15, curve);
        EXPECT_EQ(chart.verdict, Verdict::Holds) << curve;
    }
}

TEST(HomothetyScene, ConstantDilationInvariants)
{
    const auto reports = run("homothety.json", std::string("scale_cone"));
    for (const char* id : {theorem_id::kNormalComponentHomothety, theorem_id::kGeodesicCurvatureHomothety,
                           theorem_id::kNormalComponent, theorem_id::kChristoffelConformal}) {
        const auto& r = only(reports, id, "cone_geodesic");
        EXPECT_EQ(r.verdict, Verdict::Holds) << id;
        EXPECT_LT(r.residual_max, 1e-8) << id;
    }
    EXPECT_LT(extra(only(reports, theorem_id::kNormalComponent, "cone_geodesic"), "h_max_abs"), 1e-12);
    EXPECT_LT(extra(only(reports, theorem_id::kChristoffelConformal, "cone_geodesic"), "eps_max_abs"), 1e-12);
}

TEST(HomothetyScene, TangentialCombinationIsDocumented)
{
    const auto reports = run("homothety.json", std::string("scale_cone"));
    for (const char* id : {theorem_id::kTangential, theorem_id::kTangentialT1, theorem_id::kTangentialT2}) {
        const auto& r = only(reports, id, "cone_geodesic");
        EXPECT_EQ(r.verdict, Verdict::Documented) << id;
        EXPECT_GT(r.residual_max, 1.0) << id;
        EXPECT_NE(r.rhs_stats.max, 0.0) << id;
    }
    // On the cone the position is orthogonal to φ_v, so the T2 left side vanishes
    // while its right side does not.
    const auto& t2 = only(reports, theorem_id::kTangentialT2, "cone_geodesic");
    EXPECT_LT(std::max(std::abs(t2.lhs_stats.min), std::abs(t2.lhs_stats.max)), 1e-12);
    EXPECT_NE(only(reports, theorem_id::kTangentialT1, "cone_geodesic").lhs_stats.max, 0.0);
}

TEST(HomothetyScene, TangentialLeftSideIsThreeTimesXi)
{
    // λ = 2: ᾱ·φ̄_u − α·φ_u = (4 − 1)·α·φ_u; with T = φ_u the left side is 3·(α·φ_u).
    const auto s = scene("homothety.json");
    const auto& pair = s.find_pair("scale_cone")->pair;
    const auto& curve = s.find_curve("cone_geodesic")->curve;
    const CheckContext ctx{"scale_cone", "cone_geodesic", &pair, &curve};
    CheckOptions o;
    o.samples = 9;
    const auto r = check_tangential_t1(ctx, o);
    double expected_max = -1e300, expected_min = 1e300;
    for (double s_ : curve.sample_grid(9)) {
        const auto p = curve.at_arclength(s_);
        const double x = 3.0 * p.alpha.dot(surface_jet(curve.patch(), p.u, p.v).pu);
        expected_max = std::max(expected_max, x);
        expected_min = std::min(expected_min, x);
    }
    EXPECT_NEAR(r.lhs_stats.max, expected_max, 1e-12);
    EXPECT_NEAR(r.lhs_stats.min, expected_min, 1e-12);
}

TEST(HomothetyScene, RectifyingImageRhsIsTwiceTheImage)
{
    const auto reports = run("homothety.json", std::string("scale_cone"));
    const auto& r = only(reports, theorem_id::kRectifyingImage, "cone_geodesic");
    EXPECT_EQ(r.verdict, Verdict::Deviates);
    EXPECT_NEAR(r.rhs_stats.max, 2.0 * r.lhs_stats.max, 1e-12);
}

TEST(HomothetyScene, NonRectifyingCurvesAreSkipped)
{
    const auto reports = run("homothety.json", std::string("scale_sphere:latitude"));
    const auto& r = only(reports, theorem_id::kNormalComponent, "latitude");
    EXPECT_EQ(r.verdict, Verdict::Skipped);
    EXPECT_EQ(r.error_kind, ErrorKind::NonRectifying);
    // Grid checks do not need a rectifying curve.
    EXPECT_EQ(only(reports, theorem_id::kChristoffelConformal, "latitude").verdict, Verdict::Holds);
}

TEST(ReflectionScene, MongeNormalCurvatureIsDocumented)
{
    const auto reports = run("monge_reflection.json");
    const auto& monge = only(reports, theorem_id::kNormalCurvatureQ21, "diagonal");
    EXPECT_EQ(monge.verdict, Verdict::Documented);
    EXPECT_GT(monge.residual_max, 0.1);
    EXPECT_NE(monge.lhs_stats.mean, 0.0);
    EXPECT_NE(monge.rhs_stats.mean, 0.0);
    for (const char* id : {theorem_id::kChristoffelIsometry, theorem_id::kGeodesicCurvatureIsometry}) {
        EXPECT_EQ(only(reports, id, "diagonal").verdict, Verdict::Holds) << id;
    }
}

TEST(RunChecks, EmptyJobListYieldsNothing)
{
    EXPECT_TRUE(run_checks({}, 4).empty());
}

TEST(RunChecks, MissingPairIsAnErrorReport)
{
    const auto r = run_check(theorem_id::kNormalComponent, CheckContext{}, CheckOptions{});
    EXPECT_EQ(r.verdict, Verdict::Error);
    EXPECT_EQ(r.error_kind, ErrorKind::Usage);
}

TEST(RunChecks, UnknownIdIsAUsageError)
{
    const auto s = scene("identity.json");
    const CheckContext ctx{"identity", "", &s.pairs.front().pair, nullptr};
    try {
        (void)run_check("NOT_A_THEOREM", ctx, CheckOptions{});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Usage);
    }
}

TEST(Determinism, WorkerCountDoesNotChangeOutput)
{
    const std::string serial = reports_json(run("homothety.json", {}, 1));
    const std::string parallel = reports_json(run("homothety.json", {}, 4));
    EXPECT_EQ(serial, parallel);
    EXPECT_EQ(serial, reports_json(run("homothety.json", {}, 1)));
    EXPECT_EQ(reports_json(run("monge_reflection.json", {}, 3)), reports_json(run("monge_reflection.json")));
}
