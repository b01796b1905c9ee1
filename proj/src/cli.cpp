#include "rhlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "rhlab/indices.hpp"
#include "rhlab/kcalc.hpp"
#include "rhlab/packing.hpp"
#include "rhlab/report.hpp"
#include "rhlab/suites.hpp"
#include "rhlab/verify.hpp"
#include "rhlab/weights.hpp"

namespace rhlab {

namespace {

constexpr double kGrowthFlag = 1.1;
constexpr double kIndexMargin = 0.02;

struct RunConfig {
    std::string command;
    std::string weight;
    std::optional<int> dim;
    std::optional<int> level;
    std::vector<double> p{1.5, 2.0, 3.0};
    std::vector<double> q{2.0};
    double cap = 16.0;
    std::vector<double> gamma{1.0, 0.5, 0.25, 0.125};
    std::string cubes = "all";
    std::uint64_t seed = 1;
    int cases = 0;
    std::string out;
    std::optional<double> radius;
    std::string suite;
    std::string kind = "k";
    std::string cube;
};

void validate(const RunConfig& c) {
    auto bad = [](const std::string& m) { throw Error(ErrorCode::InvalidArgument, m); };
    if (c.dim && (*c.dim < 1 || *c.dim > 2)) bad("--dim must be 1 or 2");
    if (c.level && *c.level < 0) bad("--level must be nonnegative");
    const double p_min = c.command == "curve" ? 1.0 : 1.0 + 1e-300;
    for (double p : c.p)
        if (!(p >= p_min)) bad(c.command == "curve" ? "--p must be at least 1" : "--p values must exceed 1");
    for (double q : c.q)
        if (!(q >= 1.0)) bad("--q values must be at least 1");
    if (!(c.cap > 1.0)) bad("--cap must exceed 1");
    if (c.gamma.empty()) bad("--gamma must not be empty");
    for (double g : c.gamma)
        if (!(g > 0.0 && g <= 1.0)) bad("--gamma values must lie in (0, 1]");
    if (c.cases < 0) bad("--cases must be nonnegative");
    if (c.radius && !(*c.radius >= 1.0)) bad("--radius must be at least 1");
}

WeightGrid load_config_weight(const RunConfig& c) {
    if (c.weight.empty()) throw Error(ErrorCode::InvalidArgument, "--weight is required");
    if (c.weight.rfind("file:", 0) == 0) {
        WeightGrid w = load_weight(c.weight.substr(5));
        if ((c.dim && *c.dim != w.dim()) || (c.level && *c.level != w.level()))
            throw Error(ErrorCode::HeaderMismatch, "file grid d=" + std::to_string(w.dim()) +
                                                       " L=" + std::to_string(w.level()) +
                                                       " does not match --dim/--level");
        return w;
    }
    return make_grid(c.dim.value_or(1), c.level.value_or(8), c.weight);
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
    if (c.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::IoFailure, "cannot write '" + c.out + "'");
    f << text;
    if (!f) throw Error(ErrorCode::IoFailure, "write failed for '" + c.out + "'");
}

IndexOptions index_options(const RunConfig& c) {
    IndexOptions o;
    o.cap = c.cap;
    o.gamma_grid = c.gamma;
    return o;
}

double radius_for(const RunConfig& c, int dim) { return c.radius.value_or(dim == 1 ? 8.0 : 32.0); }

// --- analyze ------------------------------------------------------------------

int cmd_analyze(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const WeightGrid w = load_config_weight(c);
    const CubeFamily family = enumerate_cubes(w, CubeSelection::parse(c.cubes, w.dim()));
    const int d = w.dim();
    const double radius = radius_for(c, d);
    const auto opt = index_options(c);

    // Constants at L - 2 (block averages) give the resolution growth flags.
    std::optional<WeightGrid> coarse;
    std::optional<CubeFamily> coarse_family;
    if (w.level() >= 2 && c.cubes == "all") {
        coarse = coarsen(w, 2);
        coarse_family = enumerate_cubes(*coarse, CubeSelection::all());
    }

    Json constants = Json::array();
    Json growth = Json::object();
    for (double p : c.p) {
        const auto rh = rh_p_constant(w, p, family);
        constants.push_back(to_json(rh, d));
        if (coarse) {
            const double g = rh.value / rh_p_constant(*coarse, p, *coarse_family).value;
            growth[format_double(p)] = {{"ratio", number(g)}, {"growing", g > kGrowthFlag}};
        }
    }
    for (double p : c.p) constants.push_back(to_json(a_p_constant(w, p, family), d));
    constants.push_back(to_json(a_p_constant(w, 1.0, family), d));
    constants.push_back(to_json(rh_llogl_constant(w, family), d));
    for (double p : c.p)
        for (double q : c.q) constants.push_back(to_json(rh_lorentz_constant(w, p, q, family), d));
    constants.push_back(to_json(fujii_constant(w, family), d));

    const auto k_est = family_index(k_family(w, family), opt);
    const auto a_est = acks_index(w, family, opt);

    Json classes = Json::object();
    Json rh_p = Json::object();
    for (double p : c.p) rh_p[format_double(p)] = k_est.delta_hat > 1.0 - 1.0 / p;
    classes["rh_p"] = std::move(rh_p);
    classes["a_inf"] = k_est.delta_hat > kIndexMargin;
    if (coarse) classes["rh_p_growth"] = std::move(growth);

    Json theorems = Json::array();
    for (double p : c.p) theorems.push_back(to_json(verify_rhp_equivalence(w, p, family, radius)));
    theorems.push_back(to_json(verify_llogl_equivalence(w, family, radius)));
    theorems.push_back(to_json(verify_fujii(w, family)));

    Json report = Json::object();
    report["schema"] = kSchemaVersion;
    report["weight"] = w.label();
    report["grid"] = {{"d", d}, {"L", w.level()}};
    report["cube_policy"] = family.policy_tag;
    report["constants"] = std::move(constants);
    report["indices"] = {{"family", to_json(k_est, d)},
                         {"acks", to_json(a_est, d)},
                         {"cap", number(c.cap)},
                         {"gamma", c.gamma}};
    report["classifications"] = std::move(classes);
    report["theorems"] = std::move(theorems);
    emit(c, report.dump(2) + "\n", out);
    err << "analyzed " << w.label() << " (" << family.cubes.size() << " cubes)\n";
    return kExitOk;
}

// --- verify --------------------------------------------------------------------

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (!is_suite(c.suite)) throw Error(ErrorCode::InvalidArgument, "unknown suite '" + c.suite + "'");
    SuiteConfig sc;
    sc.seed = c.seed;
    sc.cases = c.cases;
    sc.radius = c.radius.value_or(8.0);
    sc.cap = c.cap;
    sc.gamma = c.gamma;
    sc.on_case = [&err](const std::string& suite, const CaseResult& r) {
        err << (r.pass ? "PASS " : (r.asserted ? "FAIL " : "INFO ")) << suite << ": " << r.name << "\n";
    };
    const auto reports = run_suite(c.suite, sc);
    bool pass = true;
    Json theorems = Json::array();
    for (const auto& r : reports) {
        pass = pass && r.pass();
        theorems.push_back(to_json(r));
    }
    Json doc = Json::object();
    doc["schema"] = kSchemaVersion;
    doc["command"] = "verify";
    doc["suite"] = c.suite;
    doc["seed"] = c.seed;
    doc["theorems"] = std::move(theorems);
    doc["pass"] = pass;
    emit(c, doc.dump(2) + "\n", out);
    err << (pass ? "verify: pass\n" : "verify: FAIL\n");
    return pass ? kExitOk : kExitVerifyFailed;
}

// --- curve ---------------------------------------------------------------------

std::vector<std::string> split_colon(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    return parts;
}

double parse_number(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::InvalidArgument, "bad number '" + s + "' in " + what);
}

int cmd_curve(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const WeightGrid w = load_config_weight(c);
    const DyadicCube q = c.cube.empty() ? DyadicCube::base() : DyadicCube::parse(c.cube, w.dim());
    w.check_cube(q);
    const std::string addr = q.to_string(w.dim());
    std::string rows;
    auto row = [&rows](double t, double v) { rows += format_double(t) + "," + format_double(v) + "\n"; };

    if (c.kind == "k") {
        const auto k = k_l1_linf(w, q);
        for (std::size_t i = 0; i < k.knots().size(); ++i) row(k.knots()[i], k.values()[i]);
    } else if (c.kind == "rearr") {
        const auto r = rearrangement(w, q);
        double t = 0.0;
        for (const auto& pl : r.plateaus) {
            row(t, pl.value);
            t += pl.measure;
        }
    } else if (c.kind.rfind("holmstedt", 0) == 0) {
        const auto parts = split_colon(c.kind);
        if (parts.size() != 3 || parts[0] != "holmstedt")
            throw Error(ErrorCode::InvalidArgument, "curve kind must be holmstedt:<theta>:<q>");
        const double theta = parse_number(parts[1], "--kind");
        const double qexp = parse_number(parts[2], "--kind");
        const auto h = holmstedt_curve(k_l1_linf(w, q), theta, qexp);
        for (double s : h.base().knots()) {
            const double t = std::pow(s, 1.0 - theta);
            row(t, h.value(t));
        }
    } else if (c.kind == "weighted-k" || c.kind.rfind("weighted-k:", 0) == 0) {
        const std::string wspec = c.kind.size() > 11 ? c.kind.substr(11) : "const:1";
        const WeightGrid mu = wspec.rfind("file:", 0) == 0 ? load_weight(wspec.substr(5))
                                                           : make_grid(w.dim(), w.level(), wspec);
        if (mu.dim() != w.dim() || mu.level() != w.level())
            throw Error(ErrorCode::HeaderMismatch, "weighted-k measure grid differs from --weight grid");
        const double p = c.p.front();
        const WeightGrid f_q = restrict_to(w, q);
        const WeightGrid w_q = restrict_to(mu, q);
        const double scale = q.measure(w.dim());
        const auto fam = PackingFamily::all_levels(f_q.dim(), f_q.level()).merged(PackingFamily::cz_stopping(f_q, w_q));
        std::vector<double> ts;
        for (const auto& pi : fam.packings)
            for (double t : weighted_rearrangement(f_q, w_q, pi).breakpoints()) ts.push_back(t);
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        const double total = w_q.total_mass();
        row(0.0, 0.0);
        for (double t : ts) {
            if (!(t > 0.0 && t < total)) continue;
            const auto est = k_weighted(f_q, w_q, p, t, fam);
            const double t_abs = t * scale;
            row(t_abs, std::pow(t_abs, 1.0 / p) * std::pow(est.sup_value, 1.0 / p));
        }
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown curve kind '" + c.kind + "'");
    }
    emit(c, "# curve kind=" + c.kind + " cube=" + addr + "\n" + rows, out);
    (void)err;
    return kExitOk;
}

// --- convert ---------------------------------------------------------------------

int cmd_convert(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.weight.empty()) throw Error(ErrorCode::InvalidArgument, "--weight <input file> is required");
    const std::string in = c.weight.rfind("file:", 0) == 0 ? c.weight.substr(5) : c.weight;
    const WeightGrid w = load_weight(in);
    if (c.out.empty()) {
        out << (format_from_path(in) == WeightFormat::Csv ? to_json(w) : to_csv(w));
    } else {
        save_weight(w, c.out);
    }
    err << "converted " << in << " (d=" << w.dim() << " L=" << w.level() << ")\n";
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"rhlab: rearrangements, K-functionals, weight classes and indices on dyadic grids"};
    app.require_subcommand(1);
    std::optional<int> dim, level;
    std::optional<double> radius;

    auto weight_opts = [&](CLI::App* s) {
        s->add_option("--weight", c.weight, "weight spec: const:c | pow:a | step:v,... | rand:seed:lognormal:s | file:path");
        s->add_option("--dim", dim, "dimension (1 or 2)");
        s->add_option("--level", level, "grid level L (default 8)");
        s->add_option("--out", c.out, "write the report to this file instead of stdout");
    };
    auto analysis_opts = [&](CLI::App* s) {
        s->add_option("--p", c.p, "exponents p (comma separated)")->delimiter(',');
        s->add_option("--cap", c.cap, "a.i. constant cap");
        s->add_option("--gamma", c.gamma, "gamma grid (comma separated)")->delimiter(',');
        s->add_option("--radius", radius, "comparability radius (default 8 for d=1, 32 for d=2)");
    };

    auto* analyze = app.add_subcommand("analyze", "constants, indices and classifications of one weight");
    weight_opts(analyze);
    analysis_opts(analyze);
    analyze->add_option("--q", c.q, "Lorentz second exponents (comma separated)")->delimiter(',');
    analyze->add_option("--cubes", c.cubes, "cube policy: all | level:<l> | list:<cube>;...");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", c.suite, "suite name or 'all'")->required();
    verify->add_option("--seed", c.seed, "master seed");
    verify->add_option("--cases", c.cases, "random corpus size (0 = suite default)");
    verify->add_option("--out", c.out, "write the report to this file instead of stdout");
    verify->add_option("--cap", c.cap, "a.i. constant cap");
    verify->add_option("--gamma", c.gamma, "gamma grid (comma separated)")->delimiter(',');
    verify->add_option("--radius", radius, "comparability radius");

    auto* curve = app.add_subcommand("curve", "dump a curve as breakpoint CSV");
    weight_opts(curve);
    curve->add_option("--kind", c.kind, "k | rearr | holmstedt:theta:q | weighted-k[:wspec]");
    curve->add_option("--cube", c.cube, "cube address l:i (d=1) or l:i:j (d=2)");
    curve->add_option("--p", c.p, "exponent for weighted-k")->delimiter(',');

    auto* convert = app.add_subcommand("convert", "convert a weight file between CSV and JSON");
    convert->add_option("--weight", c.weight, "input file (.csv or .json)")->required();
    convert->add_option("--out", c.out, "output file; format from extension");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    c.dim = dim;
    c.level = level;
    c.radius = radius;
    c.command = app.get_subcommands().front()->get_name();
    if (c.command != "analyze" && c.command != "curve") c.p = {2.0};

    try {
        validate(c);
        if (c.command == "analyze") return cmd_analyze(c, out, err);
        if (c.command == "verify") return cmd_verify(c, out, err);
        if (c.command == "curve") return cmd_curve(c, out, err);
        return cmd_convert(c, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.is_io() || e.code() == ErrorCode::IoFailure ? kExitIo : kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace rhlab
