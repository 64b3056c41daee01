#include "rectconf/scene.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace rectconf {

using json = nlohmann::ordered_json;

namespace {

std::string escape_token(std::string_view token)
{
    std::string out;
    for (char ch : token) {
        if (ch == '~') {
            out += "~0";
        } else if (ch == '/') {
            out += "~1";
        } else {
            out += ch;
        }
    }
    return out;
}

std::string child(const std::string& ptr, std::string_view key)
{
    return ptr + "/" + escape_token(key);
}

std::string child(const std::string& ptr, std::size_t index)
{
    return ptr + "/" + std::to_string(index);
}

[[noreturn]] void schema(const std::string& ptr, const std::string& message)
{
    throw SceneError(ErrorKind::Schema, ptr, message);
}

const json& member(const json& obj, const char* key, const std::string& ptr)
{
    if (!obj.is_object()) {
        schema(ptr, "expected an object");
    }
    const auto it = obj.find(key);
    if (it == obj.end()) {
        schema(ptr, std::string("missing required member '") + key + "'");
    }
    return *it;
}

std::string as_string(const json& j, const std::string& ptr)
{
    if (!j.is_string()) {
        schema(ptr, "expected a string");
    }
    return j.get<std::string>();
}

double as_number(const json& j, const std::string& ptr)
{
    if (!j.is_number()) {
        schema(ptr, "expected a number");
    }
    const double x = j.get<double>();
    if (!std::isfinite(x)) {
        schema(ptr, "expected a finite number");
    }
    return x;
}

int as_count(const json& j, const std::string& ptr, int minimum)
{
    if (!j.is_number_integer()) {
        schema(ptr, "expected an integer");
    }
    const auto x = j.get<long long>();
    if (x < minimum || x > 1'000'000) {
        schema(ptr, "integer out of range (minimum " + std::to_string(minimum) + ")");
    }
    return static_cast<int>(x);
}

double as_positive(const json& j, const std::string& ptr)
{
    const double x = as_number(j, ptr);
    if (!(x > 0.0)) {
        schema(ptr, "expected a positive number");
    }
    return x;
}

std::pair<double, double> as_interval(const json& j, const std::string& ptr)
{
    if (!j.is_array() || j.size() != 2) {
        schema(ptr, "expected [lower, upper]");
    }
    const double a = as_number(j[0], child(ptr, 0));
    const double b = as_number(j[1], child(ptr, 1));
    if (!(a < b)) {
        schema(ptr, "interval lower bound must be below the upper bound");
    }
    return {a, b};
}

void allow_only(const json& obj, std::initializer_list<const char*> keys, const std::string& ptr)
{
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* k : keys) {
            known = known || key == k;
        }
        if (!known) {
            schema(child(ptr, key), "unknown member '" + key + "'");
        }
    }
}

/// Runs `fn`, relabelling library errors with the JSON location they came from.
template <typename Fn>
auto at_pointer(const std::string& ptr, Fn&& fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const SceneError&) {
        throw;
    } catch (const Error& e) {
        throw SceneError(e.kind(), ptr, e.what());
    }
}

Expr parse_field(const json& obj, const char* key, const std::string& ptr, const std::vector<std::string>& vars)
{
    const std::string p = child(ptr, key);
    const std::string text = as_string(member(obj, key, ptr), p);
    return at_pointer(p, [&] { return parse(text, vars); });
}

SceneSurface parse_surface(const std::string& name, const json& j, const std::string& ptr)
{
    allow_only(j, {"x", "y", "z", "domain"}, ptr);
    const std::vector<std::string> uv{"u", "v"};
    Expr x = parse_field(j, "x", ptr, uv);
    Expr y = parse_field(j, "y", ptr, uv);
    Expr z = parse_field(j, "z", ptr, uv);
    const std::string dp = child(ptr, "domain");
    const json& d = member(j, "domain", ptr);
    if (!d.is_array() || d.size() != 2) {
        schema(dp, "expected [[u0, u1], [v0, v1]]");
    }
    const auto [u0, u1] = as_interval(d[0], child(dp, 0));
    const auto [v0, v1] = as_interval(d[1], child(dp, 1));
    return {name, at_pointer(ptr, [&] { return SurfacePatch(x, y, z, Domain{u0, u1, v0, v1}); })};
}

SceneCurve parse_curve(const std::string& name, const json& j, const std::string& ptr, const Scene& scene)
{
    allow_only(j, {"surface", "u", "v", "range", "panels"}, ptr);
    const std::string sp = child(ptr, "surface");
    const std::string surface = as_string(member(j, "surface", ptr), sp);
    const auto* s = scene.find_surface(surface);
    if (s == nullptr) {
        throw SceneError(ErrorKind::UnresolvedReference, sp, "unresolved surface '" + surface + "'");
    }
    const std::vector<std::string> t{"t"};
    Expr u = parse_field(j, "u", ptr, t);
    Expr v = parse_field(j, "v", ptr, t);
    const auto [t0, t1] = as_interval(member(j, "range", ptr), child(ptr, "range"));
    const ParamCurve c{std::move(u), std::move(v), t0, t1};
    ReparamOptions ro;
    if (j.contains("panels")) {
        ro.panels = as_count(j["panels"], child(ptr, "panels"), 2);
    }
    return {name, surface, at_pointer(ptr, [&] { return reparameterize(s->patch, c, ro); })};
}

ScenePair parse_pair(const std::string& name, const json& j, const std::string& ptr, const Scene& scene)
{
    const std::string mp = child(ptr, "mode");
    const std::string mode = as_string(member(j, "mode", ptr), mp);
    const std::string sp = child(ptr, "source");
    const std::string source = as_string(member(j, "source", ptr), sp);
    const auto* src = scene.find_surface(source);
    if (src == nullptr) {
        throw SceneError(ErrorKind::UnresolvedReference, sp, "unresolved surface '" + source + "'");
    }
    PairOptions po;
    po.grid = scene.settings.grid;
    po.conf_tol = scene.settings.conf_tol;
    if (j.contains("grid")) {
        po.grid = as_count(j["grid"], child(ptr, "grid"), 2);
    }
    if (j.contains("conf_tol")) {
        po.conf_tol = as_positive(j["conf_tol"], child(ptr, "conf_tol"));
    }
    if (j.contains("lambda")) {
        po.lambda = parse_field(j, "lambda", ptr, {"u", "v"});
    }
    if (mode == "ambient") {
        allow_only(j, {"mode", "source", "X", "Y", "Z", "lambda", "grid", "conf_tol"}, ptr);
        const std::vector<std::string> xyz{"x", "y", "z"};
        AmbientMap map(parse_field(j, "X", ptr, xyz), parse_field(j, "Y", ptr, xyz), parse_field(j, "Z", ptr, xyz));
        return {name, source, "", at_pointer(ptr, [&] { return build_pair(src->patch, map, po); })};
    }
    if (mode == "patch") {
        allow_only(j, {"mode", "source", "image", "lambda", "grid", "conf_tol"}, ptr);
        const std::string ip = child(ptr, "image");
        const std::string image = as_string(member(j, "image", ptr), ip);
        const auto* img = scene.find_surface(image);
        if (img == nullptr) {
            throw SceneError(ErrorKind::UnresolvedReference, ip, "unresolved surface '" + image + "'");
        }
        return {name, source, image, at_pointer(ptr, [&] { return build_pair(src->patch, img->patch, po); })};
    }
    schema(mp, "mode must be \"ambient\" or \"patch\"");
}

SceneCheck parse_check(const json& j, const std::string& ptr, const Scene& scene)
{
    allow_only(j, {"theorem", "pair", "curve", "samples", "tol", "rect_tol", "tangent"}, ptr);
    SceneCheck c;
    c.options.samples = scene.settings.samples;
    c.options.tol = scene.settings.tol;
    c.options.rect_tol = scene.settings.rect_tol;
    if (j.contains("theorem")) {
        const std::string tp = child(ptr, "theorem");
        const std::string id = as_string(j["theorem"], tp);
        if (!is_theorem_id(id)) {
            schema(tp, "unknown theorem id '" + id + "'");
        }
        c.theorem_id = id;
    }
    const std::string pp = child(ptr, "pair");
    c.pair = as_string(member(j, "pair", ptr), pp);
    const auto* pair = scene.find_pair(c.pair);
    if (pair == nullptr) {
        throw SceneError(ErrorKind::UnresolvedReference, pp, "unresolved pair '" + c.pair + "'");
    }
    if (j.contains("curve")) {
        const std::string cp = child(ptr, "curve");
        c.curve = as_string(j["curve"], cp);
        const auto* curve = scene.find_curve(*c.curve);
        if (curve == nullptr) {
            throw SceneError(ErrorKind::UnresolvedReference, cp, "unresolved curve '" + *c.curve + "'");
        }
        if (curve->surface != pair->source) {
            schema(cp, "curve '" + *c.curve + "' lies on '" + curve->surface + "' but pair '" + c.pair
                           + "' has source '" + pair->source + "'");
        }
    }
    if (j.contains("samples")) {
        c.options.samples = as_count(j["samples"], child(ptr, "samples"), 1);
    }
    if (j.contains("tol")) {
        c.options.tol = as_positive(j["tol"], child(ptr, "tol"));
    }
    if (j.contains("rect_tol")) {
        c.options.rect_tol = as_positive(j["rect_tol"], child(ptr, "rect_tol"));
    }
    if (j.contains("tangent")) {
        const std::string tp = child(ptr, "tangent");
        const json& t = j["tangent"];
        if (!t.is_array() || t.size() != 2) {
            schema(tp, "expected [a, b]");
        }
        c.options.tangent_a = as_number(t[0], child(tp, 0));
        c.options.tangent_b = as_number(t[1], child(tp, 1));
    }
    return c;
}

void parse_settings(const json& j, const std::string& ptr, SceneSettings& s)
{
    allow_only(j, {"samples", "tol", "rect_tol", "grid", "conf_tol"}, ptr);
    if (j.contains("samples")) {
        s.samples = as_count(j["samples"], child(ptr, "samples"), 1);
    }
    if (j.contains("tol")) {
        s.tol = as_positive(j["tol"], child(ptr, "tol"));
    }
    if (j.contains("rect_tol")) {
        s.rect_tol = as_positive(j["rect_tol"], child(ptr, "rect_tol"));
    }
    if (j.contains("grid")) {
        s.grid = as_count(j["grid"], child(ptr, "grid"), 2);
    }
    if (j.contains("conf_tol")) {
        s.conf_tol = as_positive(j["conf_tol"], child(ptr, "conf_tol"));
    }
}

template <typename T>
const T* find_named(const std::vector<T>& items, std::string_view name)
{
    for (const auto& item : items) {
        if (item.name == name) {
            return &item;
        }
    }
    return nullptr;
}

const json& object_section(const json& root, const char* key)
{
    static const json empty = json::object();
    const auto it = root.find(key);
    if (it == root.end()) {
        return empty;
    }
    if (!it->is_object()) {
        schema(std::string("/") + key, "expected an object of named entries");
    }
    return *it;
}

json stats_json(const Stats& s)
{
    return json{{"min", s.min}, {"max", s.max}, {"mean", s.mean}};
}

json vec_json(const Vec3& v)
{
    return json::array({v[0], v[1], v[2]});
}

json table_json(const ConnectionTable& c)
{
    return json{{"G1_11", c.t1_11}, {"G2_11", c.t2_11}, {"G1_12", c.t1_12},
                {"G2_12", c.t2_12}, {"G1_22", c.t1_22}, {"G2_22", c.t2_22}};
}

json report_json(const DeviationReport& r)
{
    json j;
    j["theorem_id"] = r.theorem_id;
    j["pair"] = r.pair;
    j["curve"] = r.curve;
    j["samples"] = r.samples;
    j["lhs_stats"] = stats_json(r.lhs_stats);
    j["rhs_stats"] = stats_json(r.rhs_stats);
    j["residual_max"] = r.residual_max;
    j["residual_mean"] = r.residual_mean;
    j["verdict"] = to_string(r.verdict);
    j["tol"] = r.tol;
    j["classification"] = r.classification;
    json extras = json::object();
    for (const auto& [k, v] : r.extras) {
        extras[k] = v;
    }
    j["extras"] = extras;
    j["notes"] = r.notes;
    if (r.error_kind) {
        j["error_kind"] = to_string(*r.error_kind);
    }
    return j;
}

json pair_json(const ScenePair& p)
{
    const auto& c = p.pair;
    json j;
    j["name"] = p.name;
    j["mode"] = to_string(c.mode());
    j["source"] = p.source;
    if (!p.image.empty()) {
        j["image"] = p.image;
    }
    j["classification"] = to_string(c.classification());
    j["supports_ambient_theorems"] = c.supports_ambient_theorems();
    j["grid"] = c.grid();
    j["conformality_residual"] = c.conformality_residual();
    j["worst_point"] = json{{"u", c.worst_point().u}, {"v", c.worst_point().v}};
    j["lambda_min"] = c.lambda_min();
    j["lambda_max"] = c.lambda_max();
    if (c.lambda_cross_check()) {
        j["lambda_cross_check"] = *c.lambda_cross_check();
    }
    return j;
}

json surface_json(const SceneSurface& s)
{
    const auto& p = s.patch;
    const auto& d = p.domain();
    json j;
    j["name"] = s.name;
    j["x"] = p.component(0).print();
    j["y"] = p.component(1).print();
    j["z"] = p.component(2).print();
    j["domain"] = json::array({json::array({d.u_min, d.u_max}), json::array({d.v_min, d.v_max})});
    j["monge"] = p.is_monge();
    const double u = 0.5 * (d.u_min + d.u_max);
    const double v = 0.5 * (d.v_min + d.v_max);
    const auto jet = surface_jet(p, u, v);
    const auto f = fundamental_forms(jet);
    json c;
    c["u"] = u;
    c["v"] = v;
    c["E"] = f.E;
    c["F"] = f.F;
    c["G"] = f.G;
    c["L"] = f.L;
    c["M"] = f.M;
    c["N"] = f.N;
    c["W"] = f.W;
    c["normal"] = vec_json(f.normal);
    c["christoffel"] = table_json(christoffel(metric(jet)));
    j["center"] = c;
    return j;
}

std::string csv_field(double x)
{
    return std::isfinite(x) ? format_double(x) : std::string();
}

} // namespace

SceneError::SceneError(ErrorKind kind, std::string pointer, const std::string& message)
    : Error(kind, (pointer.empty() ? std::string("(root)") : pointer) + ": " + message), pointer_(std::move(pointer))
{
}

const SceneSurface* Scene::find_surface(std::string_view name) const
{
    return find_named(surfaces, name);
}

const SceneCurve* Scene::find_curve(std::string_view name) const
{
    return find_named(curves, name);
}

const ScenePair* Scene::find_pair(std::string_view name) const
{
    return find_named(pairs, name);
}

Scene parse_scene(std::string_view json_text)
{
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SceneError(ErrorKind::Schema, "", std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        schema("", "scene must be a JSON object");
    }
    allow_only(root, {"description", "settings", "surfaces", "curves", "maps", "checks"}, "");

    Scene scene;
    if (root.contains("settings")) {
        parse_settings(root["settings"], "/settings", scene.settings);
    }
    for (const auto& [name, j] : object_section(root, "surfaces").items()) {
        scene.surfaces.push_back(parse_surface(name, j, child("/surfaces", name)));
    }
    for (const auto& [name, j] : object_section(root, "curves").items()) {
        scene.curves.push_back(parse_curve(name, j, child("/curves", name), scene));
    }
    for (const auto& [name, j] : object_section(root, "maps").items()) {
        scene.pairs.push_back(parse_pair(name, j, child("/maps", name), scene));
    }
    if (root.contains("checks")) {
        const json& checks = root["checks"];
        if (!checks.is_array()) {
            schema("/checks", "expected an array");
        }
        for (std::size_t i = 0; i < checks.size(); ++i) {
            scene.checks.push_back(parse_check(checks[i], child("/checks", i), scene));
        }
    }
    return scene;
}

Scene load_scene(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw SceneError(ErrorKind::Usage, "", "cannot open scene file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scene(buf.str());
}

std::vector<CheckJob> select_checks(const Scene& scene, const VerifyOptions& options)
{
    std::vector<CheckJob> jobs;
    const std::string sel = options.selector.value_or("");
    const bool by_theorem = options.selector && is_theorem_id(sel);
    for (const auto& c : scene.checks) {
        CheckJob job;
        job.theorem_id = c.theorem_id;
        job.options = c.options;
        if (options.samples) {
            job.options.samples = *options.samples;
        }
        if (options.tol) {
            job.options.tol = *options.tol;
        }
        const auto* pair = scene.find_pair(c.pair);
        const auto* curve = c.curve ? scene.find_curve(*c.curve) : nullptr;
        job.context.pair_name = c.pair;
        job.context.pair = &pair->pair;
        if (curve != nullptr) {
            job.context.curve_name = curve->name;
            job.context.curve = &curve->curve;
        }
        if (options.selector) {
            const std::string curve_name = c.curve.value_or("");
            if (by_theorem) {
                if (c.theorem_id && *c.theorem_id != sel) {
                    continue;
                }
                job.theorem_id = sel;
            } else if (sel != c.pair && sel != curve_name && sel != c.pair + ":" + curve_name) {
                continue;
            }
        }
        jobs.push_back(std::move(job));
    }
    if (options.selector && jobs.empty()) {
        throw Error(ErrorKind::Usage, "selector '" + sel + "' matches no check");
    }
    return jobs;
}

std::vector<DeviationReport> run_all(const Scene& scene, const VerifyOptions& options)
{
    return run_checks(select_checks(scene, options), options.workers);
}

bool reports_pass(const std::vector<DeviationReport>& reports, bool strict)
{
    for (const auto& r : reports) {
        switch (r.verdict) {
        case Verdict::Holds:
        case Verdict::Skipped:
            break;
        case Verdict::Documented:
            if (strict) {
                return false;
            }
            break;
        default:
            return false;
        }
    }
    return true;
}

CurveAnalysis analyze_curve(const Scene& scene, const std::string& name, int samples)
{
    const auto* c = scene.find_curve(name);
    if (c == nullptr) {
        throw Error(ErrorKind::UnresolvedReference, "unresolved curve '" + name + "'");
    }
    if (samples < 1) {
        throw Error(ErrorKind::Usage, "analysis needs at least one sample");
    }
    const auto& curve = c->curve;
    const auto& patch = curve.patch();
    CurveAnalysis out;
    out.curve = name;
    out.length = curve.length();
    const auto grid = curve.sample_grid(samples);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        AnalysisRow row;
        try {
            const auto pt = curve.at_arclength(grid[i]);
            row.s = pt.s;
            row.u = pt.u;
            row.v = pt.v;
            row.kappa_n = normal_curvature(pt, patch);
            row.kappa_g = geodesic_curvature(pt, patch);
            try {
                const auto fr = frenet(pt);
                row.kappa = fr.curvature;
                row.tau = fr.torsion;
                row.xi = pt.alpha.dot(fr.tangent);
                row.mu = pt.alpha.dot(fr.binormal);
                row.alpha_dot_n = pt.alpha.dot(fr.normal);
            } catch (const FrenetUndefinedError&) {
                const double nan = std::numeric_limits<double>::quiet_NaN();
                row.kappa = std::hypot(pt.d2[0], pt.d2[1], pt.d2[2]);
                row.tau = row.xi = row.mu = row.alpha_dot_n = nan;
                row.flag = to_string(ErrorKind::FrenetUndefined);
                ++out.flagged;
            }
        } catch (const Error& e) {
            throw Error(e.kind(), "sample " + std::to_string(i) + " (s=" + format_double(grid[i]) + "): " + e.what());
        }
        out.rows.push_back(row);
    }
    if (out.flagged == 0) {
        out.decomposition = rectifying_decompose(curve, std::max(3, samples), scene.settings.rect_tol);
    }
    return out;
}

std::string format_double(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string analysis_csv(const CurveAnalysis& a)
{
    std::string out = "s,u,v,kappa,tau,kappa_n,kappa_g,xi,mu,alpha_dot_n,flag\n";
    for (const auto& r : a.rows) {
        for (double x : {r.s, r.u, r.v, r.kappa, r.tau, r.kappa_n, r.kappa_g, r.xi, r.mu, r.alpha_dot_n}) {
            out += csv_field(x);
            out += ',';
        }
        out += r.flag;
        out += '\n';
    }
    return out;
}

namespace {

json summary_object(const CurveAnalysis& a)
{
    json j;
    j["curve"] = a.curve;
    j["samples"] = a.rows.size();
    j["length"] = a.length;
    j["flagged_rows"] = a.flagged;
    if (a.decomposition) {
        const auto& d = *a.decomposition;
        j["is_rectifying"] = d.is_rectifying;
        j["rect_tol"] = d.rect_tol;
        j["max_abs_alpha_dot_n"] = d.max_abs_residual;
        j["max_xi_prime_dev"] = d.max_xi_prime_dev;
        j["max_abs_mu_prime"] = d.max_abs_mu_prime;
        j["max_chen_product"] = d.max_chen_product;
        j["max_reconstruction"] = d.max_reconstruction;
    } else {
        j["is_rectifying"] = false;
        j["note"] = "Frenet data undefined on flagged rows; rectifying decomposition not computed";
    }
    return j;
}

json nullable(double x)
{
    return std::isfinite(x) ? json(x) : json(nullptr);
}

} // namespace

std::string analysis_summary_json(const CurveAnalysis& a)
{
    return summary_object(a).dump(2) + "\n";
}

std::string analysis_json(const CurveAnalysis& a)
{
    json rows = json::array();
    for (const auto& r : a.rows) {
        json row;
        row["s"] = r.s;
        row["u"] = r.u;
        row["v"] = r.v;
        row["kappa"] = nullable(r.kappa);
        row["tau"] = nullable(r.tau);
        row["kappa_n"] = nullable(r.kappa_n);
        row["kappa_g"] = nullable(r.kappa_g);
        row["xi"] = nullable(r.xi);
        row["mu"] = nullable(r.mu);
        row["alpha_dot_n"] = nullable(r.alpha_dot_n);
        row["flag"] = r.flag;
        rows.push_back(std::move(row));
    }
    json j;
    j["summary"] = summary_object(a);
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

std::string reports_json(const std::vector<DeviationReport>& reports)
{
    json arr = json::array();
    for (const auto& r : reports) {
        arr.push_back(report_json(r));
    }
    return arr.dump(2) + "\n";
}

std::string reports_csv(const std::vector<DeviationReport>& reports)
{
    std::string out = "theorem_id,pair,curve,samples,residual_max,residual_mean,tol,verdict\n";
    for (const auto& r : reports) {
        out += r.theorem_id + "," + r.pair + "," + r.curve + "," + std::to_string(r.samples) + ","
             + format_double(r.residual_max) + "," + format_double(r.residual_mean) + "," + format_double(r.tol) + ","
             + to_string(r.verdict) + "\n";
    }
    return out;
}

std::string pair_info_json(const Scene& scene, const std::optional<std::string>& name)
{
    json arr = json::array();
    for (const auto& p : scene.pairs) {
        if (!name || p.name == *name) {
            arr.push_back(pair_json(p));
        }
    }
    if (name && arr.empty()) {
        throw Error(ErrorKind::UnresolvedReference, "unresolved pair '" + *name + "'");
    }
    return arr.dump(2) + "\n";
}

std::string surface_info_json(const Scene& scene, const std::optional<std::string>& name)
{
    json arr = json::array();
    for (const auto& s : scene.surfaces) {
        if (!name || s.name == *name) {
            arr.push_back(surface_json(s));
        }
    }
    if (name && arr.empty()) {
        throw Error(ErrorKind::UnresolvedReference, "unresolved surface '" + *name + "'");
    }
    return arr.dump(2) + "\n";
}

std::string diagnostic_json(const std::exception& e)
{
    json j;
    if (const auto* err = dynamic_cast<const Error*>(&e)) {
        j["error"] = to_string(err->kind());
        if (const auto* se = dynamic_cast<const SceneError*>(&e)) {
            j["pointer"] = se->pointer();
        }
    } else {
        j["error"] = "internal";
    }
    j["message"] = e.what();
    j["exit_code"] = exit_code_for(e);
    return j.dump();
}

int exit_code_for(const std::exception& e)
{
    if (const auto* err = dynamic_cast<const Error*>(&e)) {
        return is_numerical(err->kind()) ? 3 : 2;
    }
    return 2;
}

} // namespace rectconf
