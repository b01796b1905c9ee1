#include "rhlab/weights.hpp"

#include <cmath>

#include "rhlab/kcalc.hpp"
#include "rhlab/parallel.hpp"
#include "rhlab/rearrange.hpp"
#include "rhlab/reduce.hpp"

namespace rhlab {

std::string_view to_string(ConstantKind kind) {
    switch (kind) {
    case ConstantKind::RhP: return "RH_p";
    case ConstantKind::Ap: return "A_p";
    case ConstantKind::A1: return "A_1";
    case ConstantKind::RhLLogL: return "RH_LLogL";
    case ConstantKind::RhLorentz: return "RH_Lorentz";
    case ConstantKind::Fujii: return "Fujii";
    case ConstantKind::RhPWeighted: return "RH_p_weighted";
    }
    return "unknown";
}

namespace {

// Max of ratio(i) over the family; first index wins ties.
ClassConstant max_over(ConstantKind kind, const CubeFamily& family,
                       const std::function<double(const DyadicCube&)>& ratio) {
    if (family.cubes.empty()) throw Error(ErrorCode::InvalidArgument, "empty cube family");
    std::vector<double> values(family.cubes.size());
    parallel_for(values.size(), [&](std::size_t i) { values[i] = ratio(family.cubes[i]); });
    ClassConstant c;
    c.kind = kind;
    c.cube_policy = family.policy_tag;
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[best]) best = i;
    c.value = values[best];
    c.witness = family.cubes[best];
    return c;
}

WeightGrid cellwise(const WeightGrid& w, const std::function<double(double)>& fn, const std::string& tag) {
    return w.map(fn, w.label() + "^" + tag);
}

}  // namespace

ClassConstant rh_p_constant(const WeightGrid& w, double p, const CubeFamily& family) {
    if (!(p > 1.0)) throw Error(ErrorCode::InvalidArgument, "rh_p_constant requires p > 1");
    const SumPyramid base(w);
    const SumPyramid powered(cellwise(w, [p](double v) { return std::pow(v, p); }, format_double(p)));
    auto c = max_over(ConstantKind::RhP, family, [&](const DyadicCube& q) {
        return std::pow(powered.average(q), 1.0 / p) / base.average(q);
    });
    c.p = p;
    return c;
}

ClassConstant a_p_constant(const WeightGrid& w, double p, const CubeFamily& family) {
    if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "a_p_constant requires p >= 1");
    if (p == 1.0) {
        const WeightGrid m = dyadic_maximal(w, DyadicCube::base());
        ClassConstant c;
        c.kind = ConstantKind::A1;
        c.p = 1.0;
        c.cube_policy = "all-dyadic";
        c.value = 0.0;
        std::size_t best = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const double r = m.cell(i) / w.cell(i);
            if (r > c.value) {
                c.value = r;
                best = i;
            }
        }
        const std::int64_t n = w.cells_per_axis();
        c.witness.level = w.level();
        if (w.dim() == 1) {
            c.witness.coords = {static_cast<std::int64_t>(best), 0};
        } else {
            c.witness.coords = {static_cast<std::int64_t>(best) / n, static_cast<std::int64_t>(best) % n};
        }
        return c;
    }
    const double e = -1.0 / (p - 1.0);
    const SumPyramid base(w);
    const SumPyramid dual(cellwise(w, [e](double v) { return std::pow(v, e); }, format_double(e)));
    auto c = max_over(ConstantKind::Ap, family, [&](const DyadicCube& q) {
        return base.average(q) * std::pow(dual.average(q), p - 1.0);
    });
    c.p = p;
    return c;
}

ClassConstant rh_llogl_constant(const WeightGrid& w, const CubeFamily& family) {
    return max_over(ConstantKind::RhLLogL, family, [&](const DyadicCube& q) {
        const auto r = rearrangement(w, q);
        return llogl_norm_detail(r).norm / (r.mass() / r.total_measure);
    });
}

ClassConstant rh_lorentz_constant(const WeightGrid& w, double p, double qexp, const CubeFamily& family) {
    auto c = max_over(ConstantKind::RhLorentz, family, [&](const DyadicCube& q) {
        const auto r = rearrangement(w, q);
        const double avg = r.mass() / r.total_measure;
        return lorentz_norm(r, p, qexp) / (std::pow(r.total_measure, 1.0 / p) * avg);
    });
    c.p = p;
    c.q = qexp;
    return c;
}

ClassConstant fujii_constant(const WeightGrid& w, const CubeFamily& family) {
    return max_over(ConstantKind::Fujii, family, [&](const DyadicCube& q) {
        const WeightGrid m = dyadic_maximal(w, q);
        return pairwise_sum(m.cells()) / pairwise_sum(w.values(q));
    });
}

ClassConstant rh_p_weighted_constant(const WeightGrid& g, const WeightGrid& w, double p,
                                     const CubeFamily& family) {
    if (!(p > 1.0)) throw Error(ErrorCode::InvalidArgument, "rh_p_weighted_constant requires p > 1");
    if (g.dim() != w.dim() || g.level() != w.level())
        throw Error(ErrorCode::InvalidArgument, "g and w live on different grids");
    std::vector<double> gw(g.size()), gpw(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        gw[i] = g.cell(i) * w.cell(i);
        gpw[i] = std::pow(g.cell(i), p) * w.cell(i);
    }
    const SumPyramid sw(w), sgw(w.dim(), w.level(), gw), sgpw(w.dim(), w.level(), gpw);
    auto c = max_over(ConstantKind::RhPWeighted, family, [&](const DyadicCube& q) {
        const double mass = sw.sum(q);
        return std::pow(sgpw.sum(q) / mass, 1.0 / p) / (sgw.sum(q) / mass);
    });
    c.p = p;
    return c;
}

GehringResult gehring_improve(const IndexEstimate& estimate, double p) {
    if (!(p > 1.0)) throw Error(ErrorCode::InvalidArgument, "gehring_improve requires p > 1");
    GehringResult out;
    out.estimate = estimate;
    out.index = estimate.delta_hat;
    const double threshold = 1.0 - 1.0 / p;
    if (!(out.index > threshold))
        throw Error(ErrorCode::Precondition, "not in RH_p at this resolution/cap: index " +
                                                 format_double(out.index) + " <= 1/p' = " +
                                                 format_double(threshold));
    if (out.index >= 1.0 - 1.0 / kGehringCap) {
        out.p_max = kGehringCap;
        out.capped = true;
    } else {
        out.p_max = 1.0 / (1.0 - out.index);
    }
    out.p0 = 0.5 * (p + out.p_max);
    out.certificate = out.index > 1.0 - 1.0 / out.p0;
    return out;
}

GehringResult gehring_improve(const WeightGrid& w, double p, const CubeFamily& family,
                              const IndexOptions& options) {
    return gehring_improve(family_index(k_family(w, family), options), p);
}

double k_side_rh_constant(const ConcaveCurve& k, double p) {
    const HolmstedtCurve h(k, 1.0 - 1.0 / p, p);
    const auto& t = k.knots();
    const auto& v = k.values();
    const auto& b = k.slopes();
    // ratio^p = I(T) / (T f**(T)^p) with f** = K/T.
    auto ratio = [&](double upper) {
        const double fss = k.value(upper) / upper;
        return std::pow(h.integral_to(upper) / (upper * std::pow(fss, p)), 1.0 / p);
    };
    double best = 1.0;
    for (std::size_t i = 1; i < t.size(); ++i) {
        best = std::max(best, ratio(t[i]));
        if (i == 1) continue;  // ratio is 1 on the first piece
        // On [t_{i-1}, t_i], K = a + b T, f** = g = a/T + b; the derivative of the
        // ratio has the sign of T g^{p+1} - I (g - p a / T).
        const double a = std::max(0.0, v[i - 1] - b[i - 1] * t[i - 1]);
        const double bb = b[i - 1];
        auto sign = [&](double upper) {
            const double g = a / upper + bb;
            return upper * std::pow(g, p + 1.0) - h.integral_to(upper) * (g - p * a / upper);
        };
        double lo = t[i - 1], hi = t[i];
        if (sign(lo) > 0.0 && sign(hi) < 0.0) {
            for (int it = 0; it < 60 && hi - lo > 1e-12 * hi; ++it) {
                const double mid = 0.5 * (lo + hi);
                (sign(mid) > 0.0 ? lo : hi) = mid;
            }
            best = std::max(best, ratio(0.5 * (lo + hi)));
        }
    }
    return best;
}

}  // namespace rhlab
