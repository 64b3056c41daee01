#include "rectconf/scene.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace rectconf;

namespace {

const std::string kDir = RECTCONF_SCENE_DIR;

/// Runs `fn` and returns the SceneError it throws.
template <typename Fn>
SceneError scene_error(Fn&& fn)
{
    try {
        fn();
    } catch (const SceneError& e) {
        return e;
    }
    ADD_FAILURE() << "expected a SceneError";
    return SceneError(ErrorKind::Usage, "", "none");
}

const char* kPlaneOnly = R"({
  "surfaces": {"plane": {"x": "u", "y": "v", "z": "0", "domain": [[-1, 1], [-1, 1]]}}
})";

} // namespace

TEST(SceneLoad, MinimalSceneHasNoPairs)
{
    const auto s = parse_scene(kPlaneOnly);
    ASSERT_EQ(s.surfaces.size(), 1u);
    EXPECT_TRUE(s.pairs.empty());
    EXPECT_TRUE(s.checks.empty());
    EXPECT_EQ(s.settings.samples, 64);
    EXPECT_NE(s.find_surface("plane"), nullptr);
    EXPECT_EQ(s.find_surface("torus"), nullptr);
}

TEST(SceneLoad, MercatorSceneBuildsPairWithDeclaredDilation)
{
    const auto s = load_scene(kDir + "/mercator.json");
    ASSERT_EQ(s.pairs.size(), 1u);
    const auto& p = s.pairs.front();
    EXPECT_EQ(p.source, "sphere");
    EXPECT_EQ(p.image, "mercator");
    EXPECT_EQ(p.pair.grid(), 20);
    ASSERT_TRUE(p.pair.lambda_cross_check());
    EXPECT_LT(*p.pair.lambda_cross_check(), 1e-12);
    EXPECT_EQ(s.checks.size(), 2u);
}

TEST(SceneLoad, EveryShippedSceneLoads)
{
    for (const char* f : {"identity.json", "isometry.json", "homothety.json", "mercator.json", "cone_mercator.json",
                          "plane_exp.json", "monge_reflection.json"}) {
        EXPECT_NO_THROW((void)load_scene(kDir + "/" + f)) << f;
    }
}

TEST(SceneErrors, UnresolvedSurface)
{
    const auto e = scene_error([] {
        (void)parse_scene(R"({"surfaces": {}, "curves": {"c": {"surface": "torus", "u": "t", "v": "t", "range": [0, 1]}}})");
    });
    EXPECT_EQ(e.kind(), ErrorKind::UnresolvedReference);
    EXPECT_EQ(e.pointer(), "/curves/c/surface");
}

TEST(SceneErrors, ExpressionSyntaxCarriesPointer)
{
    const auto e = scene_error([] {
        (void)parse_scene(R"({"surfaces": {"p": {"x": "sin(", "y": "v", "z": "0", "domain": [[0, 1], [0, 1]]}}})");
    });
    EXPECT_EQ(e.kind(), ErrorKind::Syntax);
    EXPECT_EQ(e.pointer(), "/surfaces/p/x");
    EXPECT_NE(std::string(e.what()).find("offset 4"), std::string::npos);
}

TEST(SceneErrors, SchemaViolations)
{
    struct Case {
        const char* json;
        const char* pointer;
    };
    const Case cases[] = {
        {R"({"surfaces": {}, "extra": 1})", ""},
        {R"([1, 2])", ""},
        {R"({"settings": {"samples": 0}})", "/settings/samples"},
        {R"({"settings": {"tol": -1}})", "/settings/tol"},
        {R"({"surfaces": {"p": {"x": "u", "y": "v", "domain": [[0, 1], [0, 1]]}}})", "/surfaces/p"},
        {R"({"surfaces": {"p": {"x": "u", "y": "v", "z": "0", "domain": [[1, 0], [0, 1]]}}})", "/surfaces/p/domain"},
        {R"({"surfaces": {"p": {"x": "u", "y": "v", "z": "0", "domain": [[0, 1], [0, 1]], "colour": "red"}}})",
         "/surfaces/p"},
    };
    for (const auto& c : cases) {
        const auto e = scene_error([&] { (void)parse_scene(c.json); });
        EXPECT_EQ(e.kind(), ErrorKind::Schema) << c.json << " : " << e.what();
        EXPECT_EQ(e.pointer().rfind(c.pointer, 0), 0u) << c.json << " : " << e.pointer();
    }
    const auto bad_json = scene_error([] { (void)parse_scene("{"); });
    EXPECT_EQ(bad_json.kind(), ErrorKind::Schema);
}

TEST(SceneErrors, CheckReferences)
{
    const std::string base = R"({
      "surfaces": {"plane": {"x": "u", "y": "v", "z": "0", "domain": [[-1, 1], [-1, 1]]},
                   "other": {"x": "u", "y": "v", "z": "1", "domain": [[-1, 1], [-1, 1]]}},
      "curves": {"c": {"surface": "other", "u": "t", "v": "t/2", "range": [0, 0.5]}},
      "maps": {"id": {"mode": "ambient", "source": "plane", "X": "x", "Y": "y", "Z": "z"}},
      "checks": [)";
    auto with = [&](const std::string& check) { return base + check + "]}"; };

    auto e = scene_error([&] { (void)parse_scene(with(R"({"pair": "nope"})")); });
    EXPECT_EQ(e.kind(), ErrorKind::UnresolvedReference);
    EXPECT_EQ(e.pointer(), "/checks/0/pair");

    e = scene_error([&] { (void)parse_scene(with(R"({"pair": "id", "curve": "c"})")); });
    EXPECT_EQ(e.kind(), ErrorKind::Schema);
    EXPECT_EQ(e.pointer(), "/checks/0/curve");

    e = scene_error([&] { (void)parse_scene(with(R"({"pair": "id", "theorem": "Q99"})")); });
    EXPECT_EQ(e.pointer(), "/checks/0/theorem");

    EXPECT_NO_THROW((void)parse_scene(with(R"({"pair": "id", "theorem": "CHRISTOFFEL_ISOMETRY"})")));
}

TEST(SceneErrors, NonConformalMapIsRejectedWithPointer)
{
    const auto e = scene_error([] {
        (void)parse_scene(R"({
          "surfaces": {"p": {"x": "u", "y": "v", "z": "0", "domain": [[-1, 1], [-1, 1]]}},
          "maps": {"shear": {"mode": "ambient", "source": "p", "X": "x + y", "Y": "y", "Z": "z"}}})");
    });
    EXPECT_EQ(e.kind(), ErrorKind::NonConformal);
    EXPECT_EQ(e.pointer(), "/maps/shear");
}

TEST(Selection, SelectorsFilterChecks)
{
    const auto s = load_scene(kDir + "/homothety.json");
    EXPECT_EQ(select_checks(s, {}).size(), 3u);
    VerifyOptions o;
    o.selector = "scale_sphere";
    EXPECT_EQ(select_checks(s, o).size(), 2u);
    o.selector = "latitude";
    EXPECT_EQ(select_checks(s, o).size(), 1u);
    o.selector = "scale_sphere:great_circle";
    EXPECT_EQ(select_checks(s, o).size(), 1u);
    o.selector = "NORMAL_COMPONENT";
    const auto jobs = select_checks(s, o);
    ASSERT_EQ(jobs.size(), 3u);
    for (const auto& j : jobs) {
        EXPECT_EQ(j.theorem_id, "NORMAL_COMPONENT");
    }
    o.selector = "nothing_here";
    try {
        (void)select_checks(s, o);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Usage);
    }
}

TEST(Selection, OverridesApplyToEveryJob)
{
    const auto s = load_scene(kDir + "/mercator.json");
    VerifyOptions o;
    o.samples = 7;
    o.tol = 1e-3;
    for (const auto& j : select_checks(s, o)) {
        EXPECT_EQ(j.options.samples, 7);
        EXPECT_EQ(j.options.tol, 1e-3);
    }
}

TEST(Verdicts, StrictModeRejectsDocumentedDiscrepancies)
{
    DeviationReport held, documented, skipped, deviates;
    held.verdict = Verdict::Holds;
    documented.verdict = Verdict::Documented;
    skipped.verdict = Verdict::Skipped;
    deviates.verdict = Verdict::Deviates;
    EXPECT_TRUE(reports_pass({held, skipped, documented}, false));
    EXPECT_FALSE(reports_pass({held, skipped, documented}, true));
    EXPECT_FALSE(reports_pass({held, deviates}, false));
    EXPECT_TRUE(reports_pass({}, true));
}

TEST(Output, DoublesRoundTripWithSeventeenDigits)
{
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(1.0), "1");
    for (double x : {std::acos(-1.0), 1e-300, -2.5e17, 1.0 / 3.0}) {
        EXPECT_EQ(std::stod(format_double(x)), x);
    }
}

TEST(Output, AnalysisCsvLayout)
{
    const auto s = load_scene(kDir + "/identity.json");
    const auto a = analyze_curve(s, "cone_geodesic", 5);
    EXPECT_EQ(a.rows.size(), 5u);
    EXPECT_EQ(a.flagged, 0);
    ASSERT_TRUE(a.decomposition);
    EXPECT_TRUE(a.decomposition->is_rectifying);
    const std::string csv = analysis_csv(a);
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "s,u,v,kappa,tau,kappa_n,kappa_g,xi,mu,alpha_dot_n,flag");
    int lines = 0;
    for (std::string line; std::getline(in, line);) {
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 10);
        ++lines;
    }
    EXPECT_EQ(lines, 5);
}

TEST(Output, FlaggedRowsForStraightLine)
{
    const auto s = load_scene(kDir + "/plane_exp.json");
    const auto a = analyze_curve(s, "line", 4);
    EXPECT_EQ(a.flagged, 4);
    EXPECT_FALSE(a.decomposition);
    for (const auto& r : a.rows) {
        EXPECT_EQ(r.flag, "frenet_undefined");
        EXPECT_TRUE(std::isnan(r.kappa_g) || r.kappa_g == 0.0);
    }
    EXPECT_NE(analysis_csv(a).find(",,"), std::string::npos);
}

TEST(Output, ReportsAreDeterministic)
{
    const auto s = load_scene(kDir + "/cone_mercator.json");
    const auto a = reports_json(run_all(s));
    const auto b = reports_json(run_all(s));
    EXPECT_EQ(a, b);
    EXPECT_EQ(reports_csv(run_all(s)), reports_csv(run_all(s)));
    EXPECT_EQ(analysis_json(analyze_curve(s, "sec_construction", 9)),
              analysis_json(analyze_curve(s, "sec_construction", 9)));
}

TEST(Diagnostics, ExitCodesAndJson)
{
    EXPECT_EQ(exit_code_for(Error(ErrorKind::Schema, "x")), 2);
    EXPECT_EQ(exit_code_for(Error(ErrorKind::Usage, "x")), 2);
    EXPECT_EQ(exit_code_for(Error(ErrorKind::Degenerate, "x")), 3);
    EXPECT_EQ(exit_code_for(Error(ErrorKind::FrenetUndefined, "x")), 3);
    const std::string d = diagnostic_json(SceneError(ErrorKind::UnresolvedReference, "/curves/c/surface", "missing"));
    EXPECT_EQ(d.find('\n'), std::string::npos);
    EXPECT_NE(d.find("\"pointer\":\"/curves/c/surface\""), std::string::npos) << d;
    EXPECT_NE(d.find("\"exit_code\":2"), std::string::npos) << d;
}
