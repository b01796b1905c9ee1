#include "rhlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rhlab/kcalc.hpp"
#include "rhlab/parallel.hpp"
#include "rhlab/rearrange.hpp"
#include "rhlab/reduce.hpp"
#include "rhlab/weights.hpp"

namespace rhlab {

namespace {

struct Sup {
    double value = 0.0;
    std::size_t index = 0;
};

Sup sup_over(std::size_t n, const std::function<double(std::size_t)>& fn) {
    std::vector<double> v(n);
    parallel_for(n, [&](std::size_t i) { v[i] = fn(i); });
    Sup s;
    for (std::size_t i = 0; i < n; ++i)
        if (i == 0 || v[i] > s.value) s = {v[i], i};
    return s;
}

bool within(double ratio, double radius) { return ratio >= 1.0 / radius && ratio <= radius; }

std::optional<double> pow_exponent(const std::string& label) {
    if (!label.starts_with("pow:")) return std::nullopt;
    try {
        std::size_t used = 0;
        const double a = std::stod(label.substr(4), &used);
        if (used != label.size() - 4) return std::nullopt;
        return a;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace

TheoremReport verify_rhp_equivalence(const WeightGrid& w, double p, const CubeFamily& family, double radius) {
    TheoremReport r{"rhp_equivalence", w.label(), {}};
    const auto rh = rh_p_constant(w, p, family);
    const auto ks = sup_over(family.cubes.size(), [&](std::size_t i) {
        return k_side_rh_constant(k_l1_linf(w, family.cubes[i]), p);
    });
    const double ratio = rh.value / ks.value;
    CaseResult c;
    c.name = w.label() + " p=" + format_double(p);
    c.pass = within(ratio, radius);
    c.details["rh_p"] = number(rh.value);
    c.details["rh_witness"] = rh.witness.to_string(w.dim());
    c.details["k_side"] = number(ks.value);
    c.details["k_witness"] = family.cubes[ks.index].to_string(w.dim());
    c.details["ratio"] = number(ratio);
    c.details["radius"] = radius;
    r.cases.push_back(std::move(c));
    return r;
}

TheoremReport verify_llogl_equivalence(const WeightGrid& w, const CubeFamily& family, double radius) {
    TheoremReport r{"llogl_equivalence", w.label(), {}};
    const auto rh = rh_llogl_constant(w, family);
    const auto hr = sup_over(family.cubes.size(), [&](std::size_t i) {
        const auto& q = family.cubes[i];
        return hardy_residual(k_l1_linf(w, q).to_piecewise(), q.measure(w.dim())).value;
    });
    const double ratio = rh.value / hr.value;
    CaseResult c;
    c.name = w.label();
    c.pass = within(ratio, radius);
    c.details["rh_llogl"] = number(rh.value);
    c.details["rh_witness"] = rh.witness.to_string(w.dim());
    c.details["hardy_residual"] = number(hr.value);
    c.details["hardy_witness"] = family.cubes[hr.index].to_string(w.dim());
    c.details["ratio"] = number(ratio);
    c.details["radius"] = radius;
    r.cases.push_back(std::move(c));
    return r;
}

TheoremReport verify_acks(const WeightGrid& w, const CubeFamily& family, const IndexOptions& options,
                          double margin, bool asserted, const IndexEstimate* k_index) {
    TheoremReport r{"acks", w.label(), {}};
    const IndexEstimate k = k_index ? *k_index : family_index(k_family(w, family), options);
    const IndexEstimate a = acks_index(w, family, options);
    const bool in_k = k.delta_hat > margin;
    const bool in_acks = a.lambda_hat < 1.0 - margin;
    CaseResult c;
    c.name = w.label();
    c.asserted = asserted;
    c.pass = in_k == in_acks;
    c.details["k_index"] = number(k.delta_hat);
    c.details["lambda_hat"] = number(a.lambda_hat);
    c.details["margin"] = margin;
    c.details["in_class_k"] = in_k;
    c.details["in_class_acks"] = in_acks;
    c.details["borderline"] = std::abs(k.delta_hat - margin) < 0.05 || std::abs(a.lambda_hat - (1.0 - margin)) < 0.05;
    r.cases.push_back(std::move(c));
    return r;
}

TheoremReport verify_stromberg_wheeden(const WeightGrid& w, double p, const CubeFamily& family,
                                       const IndexOptions& options, double margin,
                                       const IndexEstimate* k_index) {
    TheoremReport r{"stromberg_wheeden", w.label(), {}};
    const IndexEstimate k = k_index ? *k_index : family_index(k_family(w, family), options);
    const bool rh = k.delta_hat > 1.0 - 1.0 / p;
    CaseResult c;
    c.name = w.label() + " p=" + format_double(p);
    c.details["k_index"] = number(k.delta_hat);
    c.details["threshold"] = 1.0 - 1.0 / p;
    c.details["in_rh_p"] = rh;
    bool ainf = false;
    const auto a = pow_exponent(w.label());
    if (a && *a * p <= -1.0) {
        c.details["power_weight"] = "out-of-domain";
    } else {
        const WeightGrid wp = w.map([p](double v) { return std::pow(v, p); }, w.label() + "^" + format_double(p));
        const IndexEstimate kp = family_index(k_family(wp, family), options);
        ainf = kp.delta_hat > margin;
        c.details["power_index"] = number(kp.delta_hat);
        if (a) c.details["power_index_closed_form"] = 1.0 + *a * p;
    }
    c.details["power_in_a_inf"] = ainf;
    c.pass = rh == ainf;
    r.cases.push_back(std::move(c));
    return r;
}

TheoremReport verify_fujii(const WeightGrid& w, const CubeFamily& family, double cst) {
    TheoremReport r{"fujii", w.label(), {}};
    const auto f = fujii_constant(w, family);
    const auto k = rh_llogl_constant(w, family);
    const double bound = cst * (k.value * k.value + k.value + 1.0);
    const WeightGrid m = dyadic_maximal(w, DyadicCube::base());
    const WeightGrid mm = dyadic_maximal(m, DyadicCube::base());
    double iter = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) iter = std::max(iter, mm.cell(i) / m.cell(i));
    CaseResult c;
    c.name = w.label();
    c.pass = f.value <= bound;
    c.details["fujii"] = number(f.value);
    c.details["fujii_witness"] = f.witness.to_string(w.dim());
    c.details["rh_llogl"] = number(k.value);
    c.details["bound"] = number(bound);
    c.details["c"] = cst;
    c.details["iterated_maximal_constant"] = number(iter);
    r.cases.push_back(std::move(c));
    return r;
}

TheoremReport verify_extrapolation_bound(const WeightGrid& w, const DyadicCube& q, double cst) {
    TheoremReport r{"extrapolation", w.label() + "@" + q.to_string(w.dim()), {}};
    const auto rw = rearrangement(w, q);
    const ConcaveCurve kq = ConcaveCurve::from_rearrangement(rw);
    const WeightGrid m = dyadic_maximal(w, q);
    auto rm = rearrange_values(std::vector<double>(m.cells().begin(), m.cells().end()), w.cell_measure());
    rm.total_measure = rw.total_measure;
    const auto lhs = extrapolation_norm(rm);
    const double k = hardy_residual(kq.to_piecewise(), rw.total_measure).value;
    const double mass = rw.mass();
    const double rhs = cst * mass * (k * k + k + 1.0);
    CaseResult bound;
    bound.name = r.corpus + " bound";
    bound.pass = lhs.value <= rhs && lhs.discrepancy <= 1e-8;
    bound.details["lhs"] = number(lhs.value);
    bound.details["lhs_via_k"] = number(lhs.via_k);
    bound.details["rhs"] = number(rhs);
    bound.details["hardy_residual"] = number(k);
    bound.details["l1_norm"] = number(mass);
    bound.details["c"] = cst;
    r.cases.push_back(std::move(bound));

    // Weak type: t (M w)*(t-) <= K(t, w) at every breakpoint of either curve;
    // past |Q| both K-curves are constant and the maximal function vanishes.
    std::set<double> ts;
    for (double t : rw.breakpoints()) ts.insert(t);
    for (double t : rm.breakpoints()) ts.insert(t);
    double residual = 0.0;
    double at = 0.0;
    for (double t : ts) {
        const double v = t * rm.left_limit(t) / kq.value(t);
        if (v > residual) {
            residual = v;
            at = t;
        }
    }
    CaseResult weak;
    weak.name = r.corpus + " weak-type";
    weak.pass = residual <= 1.0 + 1e-9;
    weak.details["residual"] = number(residual);
    weak.details["t"] = number(at);
    r.cases.push_back(std::move(weak));
    return r;
}

TheoremReport verify_weighted_rh(const WeightGrid& g, const WeightGrid& w, double p,
                                 const PackingFamily& packings) {
    TheoremReport r{"weighted_rh", g.label() + " | " + w.label(), {}};
    const auto all = enumerate_cubes(w, CubeSelection::all());
    const auto cg = rh_p_weighted_constant(g, w, p, all);
    std::set<double> ts;
    const WeightGrid gp = g.map([p](double v) { return std::pow(v, p); }, "g^p");
    for (const auto& pi : packings.packings)
        for (const auto* src : {&g, &gp})
            for (double t : weighted_rearrangement(*src, w, pi).breakpoints()) ts.insert(t);
    const double wb = w.total_mass();
    ts.insert(0.0);
    ts.insert(wb);
    std::vector<double> mids;
    for (auto it = ts.begin(), next = std::next(it); next != ts.end(); ++it, ++next)
        mids.push_back(0.5 * (*it + *next));
    ts.insert(mids.begin(), mids.end());
    double worst = 0.0;
    double worst_t = 0.0;
    bool ok = true;
    std::size_t checked = 0;
    for (double t : ts) {
        if (!(t > 0.0 && t < wb)) continue;
        const auto kp = k_weighted(g, w, p, t, packings);
        const auto k1 = k_weighted(g, w, 1.0, t, packings);
        const double lhs = std::pow(t, 1.0 - 1.0 / p) * kp.estimate;
        const double rhs = cg.value * k1.estimate;
        ++checked;
        const double ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? INFINITY : 0.0);
        if (ratio > worst) {
            worst = ratio;
            worst_t = t;
        }
        if (lhs > rhs * (1.0 + 1e-12)) ok = false;
    }
    CaseResult c;
    c.name = r.corpus + " p=" + format_double(p);
    c.pass = ok && checked > 0;
    c.details["rh_p_weighted"] = number(cg.value);
    c.details["points"] = checked;
    c.details["max_ratio"] = number(worst);
    c.details["max_ratio_t"] = number(worst_t);
    c.details["packings"] = packings.packings.size();
    c.details["policy"] = packings.policy;
    r.cases.push_back(std::move(c));
    return r;
}

}  // namespace rhlab
