#include "rhlab/suites.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "rhlab/kcalc.hpp"
#include "rhlab/packing.hpp"
#include "rhlab/parallel.hpp"
#include "rhlab/rearrange.hpp"
#include "rhlab/reduce.hpp"
#include "rhlab/rng.hpp"
#include "rhlab/verify.hpp"
#include "rhlab/weights.hpp"

namespace rhlab {

namespace {

constexpr double kGrowthThreshold = 1.1;   // Lorentz / RH_p blow-up: C(L=14) / C(L=10)
constexpr double kLLogLGrowth = 1.25;      // RH_LLogL membership: C(L=14) / C(L=10)
constexpr double kClassMargin = 0.02;

double as_double(const Json& j) {
    if (j.is_number()) return j.get<double>();
    const auto text = j.get<std::string>();
    if (text == "inf") return HUGE_VAL;
    if (text == "-inf") return -HUGE_VAL;
    return std::nan("");
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

int cases_or(const SuiteConfig& c, int fallback) { return c.cases > 0 ? c.cases : fallback; }

IndexOptions index_options(const SuiteConfig& c) {
    IndexOptions o;
    o.cap = c.cap;
    o.gamma_grid = c.gamma;
    return o;
}

class Collector {
public:
    Collector(const SuiteConfig& config, std::string suite, std::string corpus)
        : config_(config), report_{std::move(suite), std::move(corpus), {}} {}

    void add(CaseResult c) {
        if (config_.on_case) config_.on_case(report_.id, c);
        report_.cases.push_back(std::move(c));
    }
    void add(const TheoremReport& r) {
        for (const auto& c : r.cases) add(c);
    }
    TheoremReport done() { return std::move(report_); }

private:
    const SuiteConfig& config_;
    TheoremReport report_;
};

WeightGrid random_grid(std::uint64_t seed, std::uint64_t i, int d, int level, bool quantized) {
    const CounterRng rng(seed);
    static constexpr double sigmas[] = {0.25, 0.5, 1.0};
    const std::string spec = "rand:" + std::to_string(rng.derive(i)) + ":lognormal:" + format_double(sigmas[i % 3]);
    WeightGrid w = make_grid(d, level, spec);
    if (!quantized) return w;
    // Coarse quantization produces ties, exercising plateau merging.
    return w.map([](double v) { return std::max(0.25, std::round(v * 4.0) / 4.0); }, spec + "|q4");
}

std::vector<WeightGrid> corpus(int level, const SuiteConfig& config, int random_default) {
    std::vector<WeightGrid> out;
    for (const auto& s : analytic_specs()) out.push_back(make_grid(1, level, s));
    for (const auto& s : random_specs(config.seed, cases_or(config, random_default)))
        out.push_back(make_grid(1, level, s));
    return out;
}

// --- exactness ------------------------------------------------------------------

TheoremReport suite_rearrange(const SuiteConfig& config) {
    Collector col(config, "rearrange", "random lognormal grids, d=1 L<=10, d=2 L<=6");
    const int n = cases_or(config, 200);
    for (int i = 0; i < n; ++i) {
        const int d = i % 2 == 0 ? 1 : 2;
        const int level = d == 1 ? 1 + (i / 2) % 10 : 1 + (i / 2) % 6;
        const WeightGrid w = random_grid(config.seed, static_cast<std::uint64_t>(i), d, level, i % 4 >= 2);
        const auto family = enumerate_cubes(w, CubeSelection::all());
        double equi = 0.0, kend = 0.0, lux = 0.0;
        bool concave = true, partition = true, lux_lower = true;
        for (const auto& q : family.cubes) {
            const auto r = rearrangement(w, q);
            const double mass = integrate(w, q);
            equi = std::max(equi, rel_err(r.mass(), mass));
            try {
                const auto k = ConcaveCurve::from_rearrangement(r);
                kend = std::max(kend, rel_err(k.final_value(), mass));
                for (std::size_t j = 2; j < k.knots().size(); ++j)
                    if (k.values()[j] / k.knots()[j] > k.values()[j - 1] / k.knots()[j - 1] * (1.0 + 1e-15))
                        concave = false;
            } catch (const Error&) {
                concave = false;
            }
            const auto lr = llogl_norm_detail(r);
            lux = std::max(lux, std::abs(lr.residual));
            if (lr.norm < mass / r.total_measure) lux_lower = false;
        }
        const double base = integrate(w, DyadicCube::base());
        for (int l = 0; l <= level; ++l) {
            std::vector<double> masses;
            for (const auto& q : enumerate_cubes(w, CubeSelection::single_level(l)).cubes)
                masses.push_back(integrate(w, q));
            if (SumPyramid(d, l, masses).sum(DyadicCube::base()) != base) partition = false;
        }
        CaseResult c;
        c.name = w.label() + " d=" + std::to_string(d) + " L=" + std::to_string(level);
        c.pass = equi <= 1e-12 && kend <= 1e-12 && concave && partition && lux <= 1e-9 && lux_lower;
        c.details["cubes"] = family.cubes.size();
        c.details["equimeasurability_rel_err"] = number(equi);
        c.details["k_end_rel_err"] = number(kend);
        c.details["concave"] = concave;
        c.details["partition_exact"] = partition;
        c.details["luxemburg_residual"] = number(lux);
        c.details["luxemburg_above_average"] = lux_lower;
        col.add(std::move(c));
    }
    return col.done();
}

// --- Herz -------------------------------------------------------------------------

TheoremReport suite_herz(const SuiteConfig& config) {
    Collector col(config, "herz", "random lognormal grids per dimension");
    const int n = cases_or(config, 50);
    for (int d = 1; d <= 2; ++d) {
        for (int i = 0; i < n; ++i) {
            const int level = d == 1 ? 2 + i % 9 : 1 + i % 6;
            const auto idx = static_cast<std::uint64_t>(1000 * d + i);
            const WeightGrid w = random_grid(config.seed, idx, d, level, i % 4 == 3);
            const double eps = w.cell_measure();
            const double lower_c = std::ldexp(1.0, d) + 1.0;
            double upper = 0.0, lower = 0.0;
            bool pointwise = true;
            std::vector<DyadicCube> roots{DyadicCube::base(), DyadicCube{1, {0, 0}}};
            for (const auto& q0 : roots) {
                const auto rw = rearrangement(w, q0);
                const WeightGrid m = dyadic_maximal(w, q0);
                auto rm = rearrange_values(std::vector<double>(m.cells().begin(), m.cells().end()), eps);
                rm.total_measure = rw.total_measure;
                const double avg = rw.mass() / rw.total_measure;
                for (double v : m.cells())
                    if (v < avg * (1.0 - 1e-15)) pointwise = false;
                std::vector<double> ts = rw.breakpoints();
                const auto more = rm.breakpoints();
                ts.insert(ts.end(), more.begin(), more.end());
                for (double t : ts) {
                    const double wss = double_star(rw, t);
                    upper = std::max(upper, rm.left_limit(t) / wss);
                    lower = std::max(lower, wss / (lower_c * rm.value_at(t * (1.0 - eps))));
                }
            }
            CaseResult c;
            c.name = w.label() + " d=" + std::to_string(d) + " L=" + std::to_string(level);
            c.pass = upper <= 1.0 + 1e-12 && lower <= 1.0 + 1e-12 && pointwise;
            c.details["upper_ratio"] = number(upper);
            c.details["lower_ratio"] = number(lower);
            c.details["lower_constant"] = lower_c;
            c.details["maximal_above_average"] = pointwise;
            col.add(std::move(c));
        }
    }
    return col.done();
}

// --- indices ------------------------------------------------------------------------

TheoremReport suite_index(const SuiteConfig& config) {
    Collector col(config, "index", "pow:a at L=14, all dyadic cubes");
    const auto opt = index_options(config);
    for (double a : {-0.75, -0.5, -0.25}) {
        const WeightGrid w = make_grid(1, 14, "pow:" + format_double(a));
        const auto family = enumerate_cubes(w, CubeSelection::all());
        const auto k = family_index(k_family(w, family), opt);
        CaseResult ck;
        ck.name = w.label() + " family index";
        ck.pass = std::abs(k.delta_hat - (1.0 + a)) <= 0.05;
        ck.details["expected"] = 1.0 + a;
        ck.details["estimate"] = to_json(k, 1);
        col.add(std::move(ck));
        const auto ac = acks_index(w, family, opt);
        CaseResult ca;
        ca.name = w.label() + " acks";
        ca.pass = std::abs(ac.lambda_hat + a) <= 0.05;
        ca.details["expected"] = -a;
        ca.details["estimate"] = to_json(ac, 1);
        col.add(std::move(ca));
    }
    return col.done();
}

TheoremReport suite_gehring(const SuiteConfig& config) {
    Collector col(config, "gehring", "pow:-0.5, L in {10, 12, 14}");
    const auto opt = index_options(config);
    std::map<int, WeightGrid> grids;
    for (int level : {10, 12, 14}) grids.emplace(level, make_grid(1, level, "pow:-0.5"));
    const auto& top = grids.at(14);
    const auto all14 = enumerate_cubes(top, CubeSelection::all());
    const auto est = family_index(k_family(top, all14), opt);
    for (double p : {1.5, 1.8, 2.2, 3.0}) {
        const bool expected_in = p < 2.0;
        std::vector<double> values;
        for (const auto& [level, w] : grids)
            values.push_back(rh_p_constant(w, p, enumerate_cubes(w, CubeSelection::all())).value);
        const double growth = values.back() / values.front();
        const bool classified_in = est.delta_hat > 1.0 - 1.0 / p;
        CaseResult cls;
        cls.name = "pow:-0.5 classification p=" + format_double(p);
        cls.pass = classified_in == expected_in;
        cls.details["index"] = number(est.delta_hat);
        cls.details["threshold"] = 1.0 - 1.0 / p;
        cls.details["in_rh_p"] = classified_in;
        col.add(std::move(cls));
        CaseResult gr;
        gr.name = "pow:-0.5 rh_p growth p=" + format_double(p);
        gr.pass = expected_in ? growth < 1.05 : growth >= 2.0;
        gr.details["rh_p"] = {{"L10", number(values[0])}, {"L12", number(values[1])}, {"L14", number(values[2])}};
        gr.details["growth"] = number(growth);
        gr.details["criterion"] = expected_in ? "growth < 1.05" : "growth >= 2";
        col.add(std::move(gr));
    }
    CaseResult g;
    g.name = "pow:-0.5 gehring p=1.5";
    try {
        const auto res = gehring_improve(est, 1.5);
        g.pass = res.p0 > 1.6 && res.p0 < 1.95 && res.certificate;
        g.details["index"] = number(res.index);
        g.details["p_max"] = number(res.p_max);
        g.details["p0"] = number(res.p0);
        g.details["certificate"] = res.certificate;
        // Chain check: RH_{p'} constants stable for p' <= p0 (informational).
        Json chain = Json::array();
        for (double pp : {1.5, res.p0}) {
            const double c12 = rh_p_constant(grids.at(12), pp, enumerate_cubes(grids.at(12), CubeSelection::all())).value;
            const double c14 = rh_p_constant(top, pp, all14).value;
            chain.push_back({{"p", number(pp)}, {"growth_12_14", number(c14 / c12)}});
        }
        g.details["chain"] = std::move(chain);
    } catch (const Error& e) {
        g.pass = false;
        g.details["error"] = e.what();
    }
    col.add(std::move(g));
    return col.done();
}

// --- equivalences ------------------------------------------------------------------

TheoremReport suite_rhp(const SuiteConfig& config) {
    Collector col(config, "rhp", "analytic + random lognormal, d=1 L=10");
    for (const auto& w : corpus(10, config, 30)) {
        const auto family = enumerate_cubes(w, CubeSelection::all());
        for (double p : {1.5, 2.0, 3.0}) col.add(verify_rhp_equivalence(w, p, family, config.radius));
    }
    return col.done();
}

TheoremReport suite_llogl(const SuiteConfig& config) {
    Collector col(config, "llogl", "analytic + random lognormal, d=1 L=10; analytic classification L=10/14");
    for (const auto& w : corpus(10, config, 30))
        col.add(verify_llogl_equivalence(w, enumerate_cubes(w, CubeSelection::all()), config.radius));
    const auto opt = index_options(config);
    for (const auto& spec : analytic_specs()) {
        const WeightGrid lo = make_grid(1, 10, spec);
        const WeightGrid hi = make_grid(1, 14, spec);
        const auto fam_hi = enumerate_cubes(hi, CubeSelection::all());
        const double c10 = rh_llogl_constant(lo, enumerate_cubes(lo, CubeSelection::all())).value;
        const double c14 = rh_llogl_constant(hi, fam_hi).value;
        const auto est = family_index(k_family(hi, fam_hi), opt);
        const bool in_llogl = c14 / c10 < kLLogLGrowth;
        const bool in_index = est.delta_hat > kClassMargin;
        CaseResult c;
        c.name = spec + " classification";
        c.pass = in_llogl == in_index;
        c.details["rh_llogl"] = {{"L10", number(c10)}, {"L14", number(c14)}};
        c.details["growth"] = number(c14 / c10);
        c.details["growth_threshold"] = kLLogLGrowth;
        c.details["index"] = number(est.delta_hat);
        c.details["margin"] = kClassMargin;
        c.details["in_rh_llogl"] = in_llogl;
        c.details["in_index"] = in_index;
        col.add(std::move(c));
    }
    return col.done();
}

std::vector<std::string> acks_specs() {
    return {"const:1", "step:2,1", "step:1,3,2,3", "pow:-0.8", "pow:-0.6", "pow:-0.4", "pow:-0.2"};
}

TheoremReport suite_acks(const SuiteConfig& config) {
    Collector col(config, "acks", "const, step, pow:a for a in (-0.9, 0) at L=14; pow:-0.95 reported");
    const auto opt = index_options(config);
    for (const auto& spec : acks_specs()) {
        const WeightGrid w = make_grid(1, 14, spec);
        col.add(verify_acks(w, enumerate_cubes(w, CubeSelection::all()), opt, kClassMargin, true));
    }
    const WeightGrid edge = make_grid(1, 14, "pow:-0.95");
    col.add(verify_acks(edge, enumerate_cubes(edge, CubeSelection::all()), opt, kClassMargin, false));
    return col.done();
}

TheoremReport suite_stromberg(const SuiteConfig& config) {
    Collector col(config, "stromberg", "const, step, pow:a for a in (-0.9, 0) at L=14, p in {1.5, 2}");
    const auto opt = index_options(config);
    for (const auto& spec : acks_specs()) {
        const WeightGrid w = make_grid(1, 14, spec);
        const auto family = enumerate_cubes(w, CubeSelection::all());
        const auto k = family_index(k_family(w, family), opt);
        for (double p : {1.5, 2.0}) col.add(verify_stromberg_wheeden(w, p, family, opt, kClassMargin, &k));
    }
    return col.done();
}

TheoremReport suite_lorentz(const SuiteConfig& config) {
    Collector col(config, "lorentz", "const, step, pow:-0.25, pow:-0.75 at L in {10, 12, 14}");
    const std::vector<std::pair<double, double>> pq{{2.0, 2.0}, {2.0, 3.0}, {1.5, 2.0}};
    for (const auto& spec : {"const:1", "step:2,1", "pow:-0.25", "pow:-0.75"}) {
        std::vector<WeightGrid> grids;
        for (int level : {10, 12, 14}) grids.push_back(make_grid(1, level, spec));
        for (const auto& [p, q] : pq) {
            std::vector<double> lor, rh;
            for (const auto& w : grids) {
                const auto fam = enumerate_cubes(w, CubeSelection::all());
                lor.push_back(rh_lorentz_constant(w, p, q, fam).value);
                rh.push_back(rh_p_constant(w, p, fam).value);
            }
            const double gl = lor.back() / lor.front();
            const double gr = rh.back() / rh.front();
            const bool blow_l = gl > kGrowthThreshold;
            const bool blow_r = gr > kGrowthThreshold;
            CaseResult c;
            c.name = std::string(spec) + " p=" + format_double(p) + " q=" + format_double(q);
            c.pass = blow_l == blow_r;
            c.details["rh_lorentz"] = {number(lor[0]), number(lor[1]), number(lor[2])};
            c.details["rh_p"] = {number(rh[0]), number(rh[1]), number(rh[2])};
            c.details["growth_lorentz"] = number(gl);
            c.details["growth_rh_p"] = number(gr);
            c.details["threshold"] = kGrowthThreshold;
            col.add(std::move(c));
        }
    }
    return col.done();
}

// --- maximal function and extrapolation ------------------------------------------

TheoremReport suite_fujii(const SuiteConfig& config) {
    Collector col(config, "fujii", "analytic + random lognormal, d=1 L=10");
    for (const auto& w : corpus(10, config, 30)) col.add(verify_fujii(w, enumerate_cubes(w, CubeSelection::all())));
    return col.done();
}

TheoremReport suite_extrapolation(const SuiteConfig& config) {
    Collector col(config, "extrapolation", "analytic + random lognormal, d=1 L=10, every dyadic cube");
    auto run = [&](const WeightGrid& w, bool weak_only) {
        const auto family = enumerate_cubes(w, CubeSelection::all());
        std::vector<TheoremReport> per(family.cubes.size());
        parallel_for(family.cubes.size(), [&](std::size_t i) {
            per[i] = verify_extrapolation_bound(w, family.cubes[i]);
        });
        bool bound_ok = true, weak_ok = true;
        double worst = 0.0, weak = 0.0;
        std::size_t worst_i = 0, weak_i = 0;
        for (std::size_t i = 0; i < per.size(); ++i) {
            const auto& b = per[i].cases[0];
            const auto& wk = per[i].cases[1];
            bound_ok = bound_ok && b.pass;
            weak_ok = weak_ok && wk.pass;
            const double ratio = as_double(b.details["lhs"]) / as_double(b.details["rhs"]);
            if (ratio > worst) {
                worst = ratio;
                worst_i = i;
            }
            const double res = as_double(wk.details["residual"]);
            if (res > weak) {
                weak = res;
                weak_i = i;
            }
        }
        if (!weak_only) {
            CaseResult c;
            c.name = w.label() + " bound";
            c.pass = bound_ok;
            c.details["cubes"] = family.cubes.size();
            c.details["max_lhs_over_rhs"] = number(worst);
            c.details["witness"] = family.cubes[worst_i].to_string(w.dim());
            c.details["c"] = 4.0;
            col.add(std::move(c));
        }
        CaseResult c;
        c.name = w.label() + " weak-type";
        c.pass = weak_ok;
        c.details["max_residual"] = number(weak);
        c.details["witness"] = family.cubes[weak_i].to_string(w.dim());
        col.add(std::move(c));
    };
    for (const auto& w : corpus(10, config, 30)) run(w, false);
    for (int i = 0; i < 20; ++i) {
        const int d = i % 2 == 0 ? 1 : 2;
        run(random_grid(config.seed, static_cast<std::uint64_t>(5000 + i), d, d == 1 ? 8 : 4, false), true);
    }
    return col.done();
}

// --- packings ---------------------------------------------------------------------------

TheoremReport suite_packing(const SuiteConfig& config) {
    Collector col(config, "packing", "random f with w = 1; weighted RH pairs");
    const int n = cases_or(config, 20);
    for (int i = 0; i < n; ++i) {
        const int d = i % 2 == 0 ? 1 : 2;
        const int level = d == 1 ? 2 + i % 5 : 1 + i % 3;
        const WeightGrid f = random_grid(config.seed, static_cast<std::uint64_t>(7000 + i), d, level, i % 4 == 3);
        const WeightGrid one = make_grid(d, level, "const:1");
        const auto levels = PackingFamily::all_levels(d, level);
        const auto cz = PackingFamily::cz_stopping(f, one);
        const auto merged = levels.merged(cz);
        const auto rf = rearrangement(f, DyadicCube::base());
        double reproduce = 0.0;
        bool sandwich = true, monotone = true, sup_ok = true;
        std::vector<DecreasingStep> per_level;
        for (int l = 0; l <= level; ++l) {
            per_level.push_back(weighted_rearrangement(f, one, levels.packings[static_cast<std::size_t>(l)]));
            const auto expect = rearrangement(coarsen(f, level - l), DyadicCube::base());
            for (double t : expect.breakpoints())
                reproduce = std::max({reproduce, rel_err(per_level.back().value_at(t), expect.value_at(t)),
                                      rel_err(per_level.back().left_limit(t), expect.left_limit(t))});
        }
        const std::int64_t cells = std::int64_t{1} << (d * level);
        std::size_t points = 0;
        for (std::int64_t k = 0; k < 2 * cells - 1; ++k) {
            const double t = 0.5 * static_cast<double>(k + 1) * f.cell_measure();
            const double sup = k_weighted(f, one, 1.0, t, levels).sup_value;
            double best = 0.0;
            for (const auto& r : per_level) best = std::max(best, r.value_at(t));
            if (sup != best || per_level.back().value_at(t) != rf.value_at(t)) sup_ok = false;
            if (sup < rf.value_at(t) || sup > double_star(rf, t) * (1.0 + 1e-12)) sandwich = false;
            if (k_weighted(f, one, 1.0, t, merged).sup_value < sup) monotone = false;
            ++points;
        }
        CaseResult c;
        c.name = f.label() + " d=" + std::to_string(d) + " L=" + std::to_string(level);
        c.pass = reproduce <= 1e-12 && sandwich && monotone && sup_ok;
        c.details["points"] = points;
        c.details["level_packing_rel_err"] = number(reproduce);
        c.details["sup_over_levels_consistent"] = sup_ok;
        c.details["sandwich"] = sandwich;
        c.details["monotone_in_family"] = monotone;
        col.add(std::move(c));
    }
    auto pair = [&](const WeightGrid& g, const WeightGrid& w, double p) {
        const auto fam = PackingFamily::all_levels(g.dim(), g.level()).merged(PackingFamily::cz_stopping(g, w));
        col.add(verify_weighted_rh(g, w, p, fam));
    };
    pair(make_grid(1, 1, "step:2,1"), make_grid(1, 1, "step:1,2"), 2.0);
    pair(make_grid(1, 4, "step:2,1"), make_grid(1, 4, "step:1,2"), 2.0);
    pair(make_grid(1, 4, "const:3"), make_grid(1, 4, "step:1,2"), 2.0);
    for (int i = 0; i < 4; ++i) {
        const WeightGrid g = random_grid(config.seed, static_cast<std::uint64_t>(8000 + i), 1, 4, false);
        const WeightGrid w = random_grid(config.seed, static_cast<std::uint64_t>(8100 + i), 1, 4, false);
        pair(g, w, i % 2 == 0 ? 1.5 : 2.0);
    }
    return col.done();
}

using SuiteFn = TheoremReport (*)(const SuiteConfig&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> r{
        {"rearrange", suite_rearrange}, {"herz", suite_herz},       {"index", suite_index},
        {"gehring", suite_gehring},     {"rhp", suite_rhp},         {"llogl", suite_llogl},
        {"acks", suite_acks},           {"stromberg", suite_stromberg}, {"lorentz", suite_lorentz},
        {"fujii", suite_fujii},         {"extrapolation", suite_extrapolation}, {"packing", suite_packing},
    };
    return r;
}

}  // namespace

std::vector<std::string> analytic_specs() {
    return {"const:1",  "const:3",  "step:2,1",  "step:1,3,2,3", "step:4,1,1,1", "step:1,2,4,8,16,32,64,128",
            "pow:-0.75", "pow:-0.5", "pow:-0.25", "pow:0.5",      "pow:1"};
}

std::vector<std::string> random_specs(std::uint64_t seed, int count, std::uint64_t stream) {
    const CounterRng rng(seed);
    static constexpr double sigmas[] = {0.25, 0.5, 1.0};
    std::vector<std::string> out;
    for (int i = 0; i < count; ++i) {
        const auto k = stream * 100000 + static_cast<std::uint64_t>(i);
        out.push_back("rand:" + std::to_string(rng.derive(k)) + ":lognormal:" + format_double(sigmas[i % 3]));
    }
    return out;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, fn] : registry()) n.push_back(name);
        n.push_back("all");
        return n;
    }();
    return names;
}

bool is_suite(const std::string& name) {
    const auto& n = suite_names();
    return std::find(n.begin(), n.end(), name) != n.end();
}

std::vector<TheoremReport> run_suite(const std::string& name, const SuiteConfig& config) {
    std::vector<TheoremReport> out;
    for (const auto& [n, fn] : registry())
        if (name == "all" || name == n) out.push_back(fn(config));
    if (out.empty()) throw Error(ErrorCode::InvalidArgument, "unknown suite '" + name + "'");
    return out;
}

}  // namespace rhlab
