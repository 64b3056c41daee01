// Command-line front end: scene ingestion, theorem verification and curve analysis.

#include "rectconf/scene.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace rectconf;

namespace {

void emit(const std::optional<std::string>& dir, const std::string& file, const std::string& text)
{
    if (!dir) {
        std::cout << text;
        return;
    }
    fs::create_directories(*dir);
    const fs::path path = fs::path(*dir) / file;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::Usage, "cannot write '" + path.string() + "'");
    }
    out << text;
}

int fail(const std::exception& e)
{
    std::cerr << diagnostic_json(e) << '\n';
    return exit_code_for(e);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Conformal-map and rectifying-curve verification harness"};
    app.require_subcommand(1);

    std::string scene_path;
    std::optional<std::string> output;
    std::string format = "json";

    auto* analyze = app.add_subcommand("analyze", "Per-sample Frenet, curvature and rectifying columns of one curve");
    std::string curve;
    int analyze_samples = 64;
    std::string analyze_format = "csv";
    analyze->add_option("scene", scene_path, "Scene file")->required();
    analyze->add_option("--curve", curve, "Curve name")->required();
    analyze->add_option("--samples", analyze_samples, "Arc-length samples")->check(CLI::PositiveNumber);
    analyze->add_option("--format", analyze_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    analyze->add_option("--output", output, "Directory for output files");

    auto* verify = app.add_subcommand("verify", "Run the scene's theorem checks and emit deviation reports");
    VerifyOptions vopts;
    bool strict = false;
    verify->add_option("scene", scene_path, "Scene file")->required();
    verify->add_option("--check", vopts.selector, "Theorem id, pair, curve or pair:curve");
    verify->add_option("--samples", vopts.samples, "Override samples per check")->check(CLI::PositiveNumber);
    verify->add_option("--tol", vopts.tol, "Override check tolerance")->check(CLI::PositiveNumber);
    verify->add_flag("--strict", strict, "Count formula-documented discrepancies as failures");
    verify->add_option("--jobs", vopts.workers, "Worker threads")->check(CLI::PositiveNumber);
    verify->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    verify->add_option("--output", output, "Directory for output files");

    auto* pair_info = app.add_subcommand("pair-info", "Classification and dilation range of conformal pairs");
    std::optional<std::string> pair_name;
    pair_info->add_option("scene", scene_path, "Scene file")->required();
    pair_info->add_option("--pair", pair_name, "Only this pair");
    pair_info->add_option("--output", output, "Directory for output files");

    auto* surface_info = app.add_subcommand("surface-info", "Fundamental forms at each surface's domain centre");
    std::optional<std::string> surface_name;
    surface_info->add_option("scene", scene_path, "Scene file")->required();
    surface_info->add_option("--surface", surface_name, "Only this surface");
    surface_info->add_option("--output", output, "Directory for output files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(Error(ErrorKind::Usage, e.what()));
    }

    try {
        const Scene scene = load_scene(scene_path);

        if (*analyze) {
            const auto a = analyze_curve(scene, curve, analyze_samples);
            if (analyze_format == "csv") {
                emit(output, curve + ".csv", analysis_csv(a));
                if (output) {
                    emit(output, curve + "_summary.json", analysis_summary_json(a));
                }
            } else {
                emit(output, curve + ".json", analysis_json(a));
            }
            if (a.flagged > 0) {
                return fail(Error(ErrorKind::FrenetUndefined,
                                  "analysis completed with " + std::to_string(a.flagged) + " flagged rows"));
            }
            return 0;
        }
        if (*verify) {
            const auto reports = run_all(scene, vopts);
            emit(output, format == "json" ? "reports.json" : "reports.csv",
                 format == "json" ? reports_json(reports) : reports_csv(reports));
            return reports_pass(reports, strict) ? 0 : 1;
        }
        if (*pair_info) {
            emit(output, "pairs.json", pair_info_json(scene, pair_name));
            return 0;
        }
        emit(output, "surfaces.json", surface_info_json(scene, surface_name));
        return 0;
    } catch (const std::exception& e) {
        return fail(e);
    }
}
