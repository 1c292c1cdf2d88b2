#include "linsep/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "linsep/cone.hpp"
#include "linsep/empirical.hpp"
#include "linsep/numerics.hpp"
#include "linsep/probability.hpp"
#include "linsep/projection.hpp"
#include "linsep/random.hpp"
#include "linsep/volumes.hpp"
#include "linsep/youden.hpp"

namespace linsep {

namespace {

using json = nlohmann::ordered_json;

struct RunConfig {
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::string format = "csv";
    std::uint64_t samples = 0;  // 0: command default
    std::uint64_t trials = 10000;
    bool strict = false;
    QuadConfig quad;

    json to_json(const std::string& command) const
    {
        json j;
        j["command"] = command;
        j["seed"] = seed;
        j["workers"] = workers;
        j["format"] = format;
        j["samples"] = samples;
        j["trials"] = trials;
        j["strict"] = strict;
        j["quad_tol"] = quad.rel_tol;
        j["quad_abs_tol"] = quad.abs_tol;
        j["quad_cutoff"] = quad.max_abscissa;
        j["quad_max_subdivisions"] = quad.max_subdivisions;
        return j;
    }
};

struct Table {
    json config = json::object();
    json summary = json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
    std::vector<std::string> quality;

    void add(std::vector<json> row) { rows.push_back(std::move(row)); }
};

std::string fmt_number(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string fmt_cell(const json& v)
{
    if (v.is_null()) return "";
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return v.dump();
    if (v.is_number()) return fmt_number(v.get<double>());
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    return v.dump();
}

void write_table(const Table& t, const std::string& format, std::ostream& out)
{
    if (format == "json") {
        json doc;
        doc["config"] = t.config;
        if (!t.summary.empty()) doc["summary"] = t.summary;
        json rows = json::array();
        for (const auto& r : t.rows) {
            json o;
            for (std::size_t c = 0; c < t.columns.size(); ++c) o[t.columns[c]] = r[c];
            rows.push_back(std::move(o));
        }
        doc["rows"] = std::move(rows);
        out << doc.dump(2) << '\n';
        return;
    }
    for (const auto& [k, v] : t.config.items()) out << "# " << k << '=' << (v.is_string() ? v.get<std::string>() : fmt_cell(v)) << '\n';
    for (const auto& [k, v] : t.summary.items()) out << "# " << k << '=' << (v.is_string() ? v.get<std::string>() : fmt_cell(v)) << '\n';
    for (std::size_t c = 0; c < t.columns.size(); ++c) out << (c ? "," : "") << t.columns[c];
    out << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t c = 0; c < r.size(); ++c) out << (c ? "," : "") << fmt_cell(r[c]);
        out << '\n';
    }
}

std::vector<double> parse_list(const std::string& text, const char* what)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(cell, &used);
        } catch (const std::exception&) {
            throw ValidationError(std::string(what) + ": '" + cell + "' is not a number");
        }
        while (used < cell.size() && cell[used] == ' ') ++used;
        if (used != cell.size()) throw ValidationError(std::string(what) + ": '" + cell + "' is not a number");
        out.push_back(x);
    }
    if (out.empty()) throw ValidationError(std::string(what) + ": empty list");
    return out;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ConeSpec load_cone(const std::string& v_inline, const std::string& v_file)
{
    if (!v_inline.empty() && !v_file.empty()) throw ValidationError("give either --v or --v-file, not both");
    if (!v_file.empty()) return ConeSpec::from_json(read_file(v_file));
    if (v_inline.empty()) throw ValidationError("--v or --v-file is required");
    return ConeSpec(parse_list(v_inline, "--v"));
}

json one_based(const std::vector<int>& idx)
{
    json a = json::array();
    for (int i : idx) a.push_back(i + 1);
    return a;
}

json moreau_json(const MoreauReport& m)
{
    json j;
    j["in_cone"] = m.in_cone;
    j["residual_in_polar"] = m.residual_in_polar;
    j["orthogonal"] = m.orthogonal;
    j["inner_product"] = m.inner_product;
    j["ok"] = m.ok();
    return j;
}

// ---- subcommands -----------------------------------------------------------

struct ProjectArgs {
    std::string v, v_file, x, candidate;
};

Table cmd_project(const RunConfig& rc, const ProjectArgs& a)
{
    const ConeSpec cone = load_cone(a.v, a.v_file);
    const auto x = parse_list(a.x, "--x");
    check_length(cone, x, "--x");
    const auto res = project(cone, x);
    const auto rep = verify_moreau(cone, x, res.y);

    Table t;
    t.config = rc.to_json("project");
    t.config["v"] = cone.v();
    t.config["x"] = x;
    t.summary["face_dim"] = res.face_dim;
    if (res.terminal_pair) {
        t.summary["terminal_L"] = one_based(res.terminal_pair->L);
        t.summary["terminal_R"] = one_based(res.terminal_pair->R);
    }
    t.summary["moreau"] = moreau_json(rep);
    if (!rep.ok()) t.quality.push_back("projection failed Moreau verification: " + rep.describe());
    if (!a.candidate.empty()) {
        const auto y = parse_list(a.candidate, "--candidate");
        check_length(cone, y, "--candidate");
        const auto crep = verify_moreau(cone, x, y);
        t.summary["candidate"] = y;
        t.summary["candidate_moreau"] = moreau_json(crep);
        t.summary["candidate_report"] = crep.describe();
    }
    t.columns = {"i", "x", "y", "method", "se"};
    for (int i = 0; i < cone.n(); ++i) t.add({i + 1, x[i], res.y[i], "exact", 0.0});
    return t;
}

struct VolumesArgs {
    std::string v, v_file, methods = "closed", mode = "real";
    int N = -1, n = -1;
};

ExpansionMode parse_mode(const std::string& s)
{
    if (s == "real") return ExpansionMode::real_form;
    if (s == "complex") return ExpansionMode::complex_product;
    throw ValidationError("--mode must be real or complex");
}

Table cmd_volumes(RunConfig rc, const VolumesArgs& a)
{
    if (rc.samples == 0) rc.samples = 100000;
    std::vector<std::string> methods;
    {
        std::stringstream ss(a.methods);
        std::string m;
        while (std::getline(ss, m, ',')) methods.push_back(m);
    }
    if (methods.empty()) throw ValidationError("--method: empty list");
    const bool only_orthant = std::all_of(methods.begin(), methods.end(), [](auto& m) { return m == "orthant"; });

    Table t;
    t.config = rc.to_json("volumes");
    t.config["method"] = a.methods;
    t.config["mode"] = a.mode;
    std::optional<ConeSpec> cone;
    if (!only_orthant || !a.v.empty() || !a.v_file.empty()) {
        cone.emplace(load_cone(a.v, a.v_file));
        t.config["v"] = cone->v();
    }
    if (a.N >= 0) t.config["N"] = a.N;
    if (a.n >= 0) t.config["n"] = a.n;
    t.columns = {"k", "nu_k", "se_k", "method"};
    const RandomStream stream(rc.seed);
    ClosedFormOptions opts;
    opts.mode = parse_mode(a.mode);

    for (const auto& m : methods) {
        VolumeDistribution d;
        if (m == "closed") {
            d = intrinsic_volumes_closed(*cone, rc.quad, opts);
        } else if (m == "mc") {
            d = intrinsic_volumes_mc(*cone, rc.samples, stream, rc.workers);
        } else if (m == "combinatorial") {
            d = intrinsic_volumes_combinatorial_mc(*cone, rc.samples, stream.substream(1), rc.workers);
        } else if (m == "orthant") {
            int N = a.N, n = a.n;
            if (cone) {
                N = cone->N();
                n = cone->n();
            }
            if (N < 0 || n < 0) throw ValidationError("orthant method needs --N and --n (or --v)");
            d = intrinsic_volumes_orthant_product(N, n);
        } else {
            throw ValidationError("unknown volume method '" + m + "' (closed, mc, combinatorial, orthant)");
        }
        const std::string tag = to_string(d.method);
        CompensatedSum sum;
        for (double p : d.probs) sum.add(p);
        t.summary["sum_" + tag] = sum.value();
        t.summary["statistical_dimension_" + tag] = statistical_dimension(d);
        if (d.method == VolumeMethod::closed_form) {
            t.summary["err_estimate_" + tag] = d.err_estimate;
            t.summary["max_condition_" + tag] = d.max_condition;
            t.summary["precision_warning_" + tag] = d.precision_warning;
            if (d.precision_warning) t.quality.push_back("closed-form volumes: precision warning (condition " + fmt_number(d.max_condition) + ")");
        }
        const bool full = cone ? cone->full_space() : a.N == a.n;
        for (int k = 0; k <= d.n(); ++k) {
            if (full && k != d.n()) continue;
            const double se = d.se.empty() ? 0.0 : d.se[k];
            t.add({k, d.probs[k], se, tag});
        }
    }
    return t;
}

struct YoudenArgs {
    std::string v, method = "quadrature", mode = "real";
    int k = 1;
    double rho = -1.0;
    bool all_k = false;
};

Table cmd_youden(RunConfig rc, const YoudenArgs& a)
{
    if (rc.samples == 0) rc.samples = 100000;
    YoudenMethod method;
    if (a.method == "quadrature") method = YoudenMethod::quadrature;
    else if (a.method == "mc") method = YoudenMethod::mc;
    else throw ValidationError("--method must be quadrature or mc");
    const auto mode = parse_mode(a.mode);
    YoudenSpec spec{parse_list(a.v, "--v"), a.k, a.rho};

    Table t;
    t.config = rc.to_json("youden");
    t.config["v"] = spec.v;
    t.config["rho"] = a.rho;
    t.config["method"] = a.method;
    t.config["mode"] = a.mode;
    t.columns = {"m", "k", "rho", "method", "value", "se"};
    const RandomStream stream(rc.seed);
    std::vector<int> ks;
    if (a.all_k)
        for (int k = 1; k <= spec.m(); ++k) ks.push_back(k);
    else
        ks.push_back(a.k);
    double worst_condition = 1.0;
    for (int k : ks) {
        spec.k = k;
        spec.validate();
        YoudenValue r;
        if (method == YoudenMethod::quadrature && a.rho == -1.0)
            r = youden_closed(spec, rc.quad, mode);
        else
            r = youden_rho(spec, method, rc.quad, stream.substream(static_cast<std::uint64_t>(k)), rc.samples, rc.workers);
        worst_condition = std::max(worst_condition, r.condition);
        if (r.precision_warning)
            t.quality.push_back("youden k=" + std::to_string(k) + ": precision warning (condition " + fmt_number(r.condition) + ")");
        const double unc = method == YoudenMethod::mc ? r.se : r.err_estimate;
        t.add({spec.m(), k, a.rho, r.method, r.value, unc});
    }
    if (method == YoudenMethod::quadrature) t.summary["max_condition"] = worst_condition;
    return t;
}

struct ModelArgs {
    std::string model = "signflip";
    double delta = 1.0, b = 0.5, beta = 1.0;
    int n = -1, p = -1;
    bool intercept = false;
};

ModelSpec make_model(const ModelArgs& a)
{
    ModelSpec m;
    switch (parse_model_kind(a.model)) {
    case ModelKind::sign_flip: m = ModelSpec::sign_flip(a.delta, a.intercept); break;
    case ModelKind::logit: m = ModelSpec::logit(a.beta, a.intercept); break;
    case ModelKind::probit: m = ModelSpec::probit(a.beta, a.intercept); break;
    case ModelKind::signalless: m = ModelSpec::signalless(a.b, a.intercept); break;
    }
    m.validate();
    return m;
}

void need_np(const ModelArgs& a, bool need_p = true)
{
    if (a.n < 1) throw ValidationError("--n is required (n >= 1)");
    if (need_p && a.p < 1) throw ValidationError("--p is required (p >= 1)");
}

const std::vector<std::string> kProbColumns = {"n", "p", "model", "param", "method", "value", "se", "bound_kind", "condition_met"};

void add_prob_row(Table& t, int n, int p, const std::string& model, double param, const ProbabilityResult& r)
{
    t.add({n, p, model, param, r.method, r.value, r.se, nullptr, nullptr});
    if (r.precision_warning) t.quality.push_back(r.method + ": precision warning");
    if (r.clamp_distance > 1e-6) t.quality.push_back(r.method + ": clamped by " + fmt_number(r.clamp_distance));
}

struct ProbArgs {
    ModelArgs m;
    bool dim2 = false, intercept_signalless = false, cover = false;
};

Table cmd_prob(RunConfig rc, const ProbArgs& a)
{
    Table t;
    t.columns = kProbColumns;
    if (a.dim2) {
        need_np(a.m, false);
        t.config = rc.to_json("prob");
        t.config["variant"] = "dim2";
        t.config["n"] = a.m.n;
        t.config["delta"] = a.m.delta;
        ProbabilityResult r;
        r.value = separability_dim2_signflip(a.m.n, a.m.delta);
        r.method = "closed_form";
        add_prob_row(t, a.m.n, 2, "signflip", a.m.delta, r);
        return t;
    }
    need_np(a.m);
    if (a.cover) {
        t.config = rc.to_json("prob");
        t.config["variant"] = "cover";
        t.config["intercept"] = a.m.intercept;
        ProbabilityResult r;
        r.value = cover_probability(a.m.n, a.m.p, a.m.intercept);
        r.method = "cover";
        add_prob_row(t, a.m.n, a.m.p, "symmetric", 0.5, r);
        return t;
    }
    if (a.intercept_signalless) {
        t.config = rc.to_json("prob");
        t.config["variant"] = "intercept_signalless";
        t.config["b"] = a.m.b;
        const auto r = separability_intercept_signalless(a.m.n, a.m.p, a.m.b, rc.quad);
        add_prob_row(t, a.m.n, a.m.p, "signalless", a.m.b, r);
        return t;
    }
    if (rc.samples == 0) rc.samples = 2000;
    const ModelSpec model = make_model(a.m);
    FormulaConfig cfg;
    cfg.quad = rc.quad;
    cfg.outer_samples = rc.samples;
    cfg.workers = rc.workers;
    t.config = rc.to_json("prob");
    t.config["variant"] = "formula";
    t.config["model"] = model.name();
    t.config["param"] = model.param();
    t.config["weight_cutoff"] = cfg.weight_cutoff;
    const auto r = separability_formula(a.m.n, a.m.p, model, cfg, RandomStream(rc.seed));
    t.summary["skipped_mass"] = r.skipped_mass;
    add_prob_row(t, a.m.n, a.m.p, model.name(), model.param(), r);
    return t;
}

struct BoundsArgs {
    ModelArgs m;
    std::string kind = "dimension";
    double t = 1.0, sigma = -1.0, depth = -1.0;
};

Table cmd_bounds(const RunConfig& rc, const BoundsArgs& a)
{
    need_np(a.m);
    Table t;
    t.columns = kProbColumns;
    t.config = rc.to_json("bounds");
    t.config["kind"] = a.kind;
    t.config["intercept"] = a.m.intercept;
    const int n = a.m.n, p = a.m.p;
    auto add_bound = [&](const std::string& model, double param, const BoundResult& b) {
        t.add({n, p, model, param, "bound", b.bound, 0.0, b.kind, b.condition_met});
    };
    if (a.kind == "dimension") {
        t.config["t"] = a.t;
        if (a.m.intercept) {
            t.config["b"] = a.m.b;
            const auto b = bound_dimension(n, p, a.t, a.m.b, DimensionBoundVariant::intercept_signalless);
            t.summary["condition_threshold"] = b.condition_threshold;
            add_bound("signalless", a.m.b, b);
        } else {
            if (a.sigma < 0.0) throw ValidationError("--sigma is required for --kind dimension");
            t.config["sigma"] = a.sigma;
            const auto b = bound_dimension(n, p, a.t, a.sigma);
            t.summary["condition_threshold"] = b.condition_threshold;
            add_bound("general", a.sigma, b);
        }
    } else if (a.kind == "signflip") {
        t.config["delta"] = a.m.delta;
        t.config["t"] = a.t;
        const auto s = bound_signflip(n, p, a.m.delta, a.m.intercept, a.t);
        add_bound("signflip", a.m.delta, BoundResult{s.upper, true, 0.0, "signflip_upper"});
        add_bound("signflip", a.m.delta, BoundResult{s.lower, true, 0.0, "signflip_lower"});
        add_bound("signflip", a.m.delta, s.rate_form);
    } else if (a.kind == "hayakawa") {
        if (a.depth < 0.0) throw ValidationError("--depth is required for --kind hayakawa");
        t.config["depth"] = a.depth;
        const auto b = bound_hayakawa(n, p, a.depth);
        t.summary["condition_threshold"] = b.condition_threshold;
        add_bound("general", a.depth, b);
    } else if (a.kind == "cover") {
        add_bound("symmetric", 0.5, BoundResult{cover_probability(n, p, a.m.intercept), true, 0.0, "cover"});
    } else {
        throw ValidationError("--kind must be dimension, signflip, hayakawa or cover");
    }
    return t;
}

Table cmd_simulate(const RunConfig& rc, const ModelArgs& a)
{
    need_np(a);
    const ModelSpec model = make_model(a);
    Table t;
    t.columns = kProbColumns;
    t.config = rc.to_json("simulate");
    t.config["model"] = model.name();
    t.config["param"] = model.param();
    t.config["intercept"] = a.intercept;
    const auto r = estimate_separability(model, a.n, a.p, rc.trials, RandomStream(rc.seed), rc.workers, a.intercept);
    add_prob_row(t, a.n, a.p, model.name(), model.param(), r);
    return t;
}

struct CheckArgs {
    std::string data, definition = "all", route = "automatic";
    bool intercept = false;
};

Table cmd_check(const RunConfig& rc, const CheckArgs& a)
{
    if (a.data.empty()) throw ValidationError("--data is required");
    std::ifstream in(a.data);
    if (!in) throw ValidationError("cannot open '" + a.data + "'");
    const Dataset ds = Dataset::from_csv(in);
    CompleteRoute route;
    if (a.route == "automatic") route = CompleteRoute::automatic;
    else if (a.route == "primal") route = CompleteRoute::primal;
    else if (a.route == "farkas") route = CompleteRoute::farkas;
    else throw ValidationError("--route must be automatic, primal or farkas");
    std::vector<Separability> defs;
    if (a.definition == "all")
        defs = {Separability::complete, Separability::weak, Separability::nontrivial, Separability::candes_sur};
    else
        defs = {parse_separability(a.definition)};

    Table t;
    t.config = rc.to_json("check");
    t.config["data"] = a.data;
    t.config["intercept"] = a.intercept;
    t.config["route"] = a.route;
    t.columns = {"n", "p", "definition", "separable", "method", "se"};
    for (auto d : defs)
        t.add({ds.n(), ds.p(), to_string(d), check_separability(ds, d, a.intercept, route), "lp", 0.0});
    return t;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Probability of linear separability: cones, intrinsic volumes, bounds", "linsep"};
    app.require_subcommand(1, 1);
    RunConfig rc;
    auto common = [&](CLI::App* s) {
        s->add_option("--seed", rc.seed, "random seed")->capture_default_str();
        s->add_option("--workers", rc.workers, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
        s->add_option("--format", rc.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
        s->add_option("--samples", rc.samples, "Monte Carlo samples (0: command default)");
        s->add_option("--trials", rc.trials, "simulation trials")->capture_default_str();
        s->add_flag("--strict", rc.strict, "exit 3 on numeric-quality warnings");
        s->add_option("--quad-tol", rc.quad.rel_tol, "quadrature relative tolerance")->capture_default_str();
        s->add_option("--quad-cutoff", rc.quad.max_abscissa, "quadrature panel cutoff G")->capture_default_str();
    };
    auto model_opts = [](CLI::App* s, ModelArgs& m) {
        s->add_option("--n", m.n, "number of observations");
        s->add_option("--p", m.p, "dimension");
        s->add_option("--model", m.model, "signflip, logit, probit or signalless")->capture_default_str();
        s->add_option("--delta", m.delta, "sign-flip: probability of a correct label")->capture_default_str();
        s->add_option("--b", m.b, "signalless: P[y = 1]")->capture_default_str();
        s->add_option("--beta", m.beta, "logit/probit: |beta*|")->capture_default_str();
        s->add_flag("--intercept", m.intercept, "allow an intercept");
    };

    ProjectArgs pa;
    auto* sp = app.add_subcommand("project", "project x onto the cone of v");
    sp->add_option("--v", pa.v, "comma-separated v");
    sp->add_option("--v-file", pa.v_file, "JSON file {\"v\": [...]}");
    sp->add_option("--x", pa.x, "comma-separated x")->required();
    sp->add_option("--candidate", pa.candidate, "also verify this candidate projection");
    common(sp);

    VolumesArgs va;
    auto* sv = app.add_subcommand("volumes", "intrinsic volumes of the cone of v");
    sv->add_option("--v", va.v, "comma-separated v");
    sv->add_option("--v-file", va.v_file, "JSON file {\"v\": [...]}");
    sv->add_option("--method", va.methods, "comma list of closed, mc, combinatorial, orthant")->capture_default_str();
    sv->add_option("--mode", va.mode, "closed form expansion: real or complex")->capture_default_str();
    sv->add_option("--N", va.N, "orthant product: positive count");
    sv->add_option("--n", va.n, "orthant product: dimension");
    common(sv);

    YoudenArgs ya;
    auto* sy = app.add_subcommand("youden", "weighted Youden demon probabilities");
    sy->add_option("--v", ya.v, "comma-separated weights")->required();
    sy->add_option("--k", ya.k, "size of the lower group")->capture_default_str();
    sy->add_option("--rho", ya.rho, "correlation parameter (>= -1)")->capture_default_str();
    sy->add_option("--method", ya.method, "quadrature or mc")->capture_default_str();
    sy->add_option("--mode", ya.mode, "real or complex")->capture_default_str();
    sy->add_flag("--all-k", ya.all_k, "rows for k = 1..m");
    common(sy);

    ProbArgs pra;
    auto* spr = app.add_subcommand("prob", "separability probability formulas");
    model_opts(spr, pra.m);
    spr->add_flag("--dim2", pra.dim2, "two-dimensional sign-flip closed form");
    spr->add_flag("--intercept-signalless", pra.intercept_signalless, "signalless model with intercept");
    spr->add_flag("--cover", pra.cover, "symmetric case (Cover)");
    common(spr);

    BoundsArgs ba;
    auto* sb = app.add_subcommand("bounds", "finite-sample bounds");
    model_opts(sb, ba.m);
    sb->add_option("--kind", ba.kind, "dimension, signflip, hayakawa or cover")->capture_default_str();
    sb->add_option("--t", ba.t, "deviation parameter")->capture_default_str();
    sb->add_option("--sigma", ba.sigma, "probability of a wrong label");
    sb->add_option("--depth", ba.depth, "Tukey depth");
    common(sb);

    ModelArgs sa;
    auto* ss = app.add_subcommand("simulate", "simulate datasets and test complete separability");
    model_opts(ss, sa);
    common(ss);

    CheckArgs ca;
    auto* sc = app.add_subcommand("check", "separability verdicts for a dataset CSV");
    sc->add_option("--data", ca.data, "CSV with header x1..xp,y")->required();
    sc->add_option("--definition", ca.definition, "complete, weak, nontrivial, candes_sur or all")->capture_default_str();
    sc->add_option("--route", ca.route, "complete separability LP: automatic, primal or farkas")->capture_default_str();
    sc->add_flag("--intercept", ca.intercept, "allow an intercept");
    common(sc);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    Table t;
    try {
        rc.quad.validate();
        if (sp->parsed()) t = cmd_project(rc, pa);
        else if (sv->parsed()) t = cmd_volumes(rc, va);
        else if (sy->parsed()) t = cmd_youden(rc, ya);
        else if (spr->parsed()) t = cmd_prob(rc, pra);
        else if (sb->parsed()) t = cmd_bounds(rc, ba);
        else if (ss->parsed()) t = cmd_simulate(rc, sa);
        else t = cmd_check(rc, ca);
    } catch (const std::logic_error& e) {
        // validation, unsupported models, budget overflow
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInternal;
    }
    write_table(t, rc.format, out);
    for (const auto& q : t.quality) err << "warning: " << q << '\n';
    return rc.strict && !t.quality.empty() ? kExitQuality : kExitOk;
}

}  // namespace linsep
