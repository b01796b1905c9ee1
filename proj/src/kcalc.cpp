#include "rhlab/kcalc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rhlab/quadrature.hpp"
#include "rhlab/reduce.hpp"

namespace rhlab {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw Error(ErrorCode::InvalidArgument, msg);
}

}  // namespace

ConcaveCurve k_l1_linf(const WeightGrid& w, const DyadicCube& q) {
    return ConcaveCurve::from_rearrangement(rearrangement(w, q));
}

// --- (L^p, L^inf) -----------------------------------------------------------

double LpCurve::value(double t) const { return std::pow(power_.value(t), 1.0 / p_); }

LpCurve k_lp_linf(const DecreasingStep& r, double p) {
    require(p >= 1.0, "k_lp_linf requires p >= 1");
    DecreasingStep powered = r;
    for (auto& pl : powered.plateaus) pl.value = std::pow(pl.value, p);
    return LpCurve(ConcaveCurve::from_rearrangement(powered), p);
}

LpCurve k_lp_linf(const WeightGrid& w, const DyadicCube& q, double p) {
    return k_lp_linf(rearrangement(w, q), p);
}

// --- Holmstedt ----------------------------------------------------------------

HolmstedtCurve::HolmstedtCurve(ConcaveCurve k, double theta, double q)
    : k_(std::move(k)), theta_(theta), q_(q) {
    require(theta > 0.0 && theta < 1.0, "holmstedt_curve requires theta in (0,1)");
    require(q >= 1.0, "holmstedt_curve requires q >= 1");
    const auto& t = k_.knots();
    const auto& v = k_.values();
    const auto& b = k_.slopes();
    cumulative_.assign(t.size(), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double a = i == 0 ? 0.0 : std::max(0.0, v[i] - b[i] * t[i]);
        cumulative_[i + 1] = cumulative_[i] + power_piece_integral(a, b[i], q_, theta_ * q_, t[i], t[i + 1]);
    }
}

double HolmstedtCurve::integral_to(double upper) const {
    if (upper <= 0.0) return 0.0;
    const auto& t = k_.knots();
    const auto& v = k_.values();
    const auto& b = k_.slopes();
    const double kappa = theta_ * q_;
    if (upper >= t.back()) {
        return cumulative_.back() +
               power_piece_integral(k_.final_value(), 0.0, q_, kappa, t.back(), upper);
    }
    const auto it = std::upper_bound(t.begin(), t.end(), upper);
    const std::size_t i = static_cast<std::size_t>(it - t.begin()) - 1;
    const double a = i == 0 ? 0.0 : std::max(0.0, v[i] - b[i] * t[i]);
    return cumulative_[i] + power_piece_integral(a, b[i], q_, kappa, t[i], upper);
}

double HolmstedtCurve::value(double t) const {
    if (t <= 0.0) return 0.0;
    const double upper = std::pow(t, 1.0 / (1.0 - theta_));
    return std::pow(integral_to(upper), 1.0 / q_);
}

HolmstedtCurve holmstedt_curve(const ConcaveCurve& k, double theta, double q) {
    return HolmstedtCurve(k, theta, q);
}

// --- Lorentz ------------------------------------------------------------------

double lorentz_norm(const DecreasingStep& r, double p, double qexp) {
    require(p > 1.0, "lorentz_norm requires p > 1");
    require(qexp >= 1.0, "lorentz_norm requires q >= 1");
    const ConcaveCurve k = ConcaveCurve::from_rearrangement(r);
    const auto& t = k.knots();
    const auto& v = k.values();
    const auto& b = k.slopes();
    // Head: f** = a/t + b on each piece, integrand (a + b t)^q t^{-(q - q/p) - 1}.
    const double kappa = qexp - qexp / p;
    std::vector<double> parts;
    parts.reserve(b.size() + 1);
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double a = i == 0 ? 0.0 : std::max(0.0, v[i] - b[i] * t[i]);
        parts.push_back(power_piece_integral(a, b[i], qexp, kappa, t[i], t[i + 1]));
    }
    // Tail: int_{|Q|}^inf (m/t)^q t^{q/p - 1} dt = m^q |Q|^{q/p - q} p' / q.
    const double m = k.final_value();
    const double qm = r.total_measure;
    const double pprime = p / (p - 1.0);
    parts.push_back(std::pow(m, qexp) * std::pow(qm, qexp / p - qexp) * pprime / qexp);
    return std::pow(pairwise_sum(parts), 1.0 / qexp);
}

double lorentz_norm(const WeightGrid& w, const DyadicCube& q, double p, double qexp) {
    return lorentz_norm(rearrangement(w, q), p, qexp);
}

double k_lorentz_linf(const DecreasingStep& r, double p, double qexp, double t) {
    require(p > 1.0 && qexp >= 1.0, "k_lorentz_linf requires p > 1, q >= 1");
    require(t > 0.0, "k_lorentz_linf requires t > 0");
    const double upper = std::pow(t, p);
    const double e = qexp / p;
    std::vector<double> parts;
    double s0 = 0.0;
    for (const auto& pl : r.plateaus) {
        if (s0 >= upper) break;
        const double s1 = std::min(s0 + pl.measure, upper);
        parts.push_back(std::pow(pl.value, qexp) * power_integral(e - 1.0, s0, s1));
        s0 += pl.measure;
    }
    return std::pow(pairwise_sum(parts), 1.0 / qexp);
}

double k_lorentz_linf(const WeightGrid& w, const DyadicCube& q, double p, double qexp, double t) {
    return k_lorentz_linf(rearrangement(w, q), p, qexp, t);
}

// --- LLogL ----------------------------------------------------------------------

double llogl_functional(const DecreasingStep& r, double radius) {
    std::vector<double> parts;
    parts.reserve(r.plateaus.size());
    for (const auto& pl : r.plateaus) {
        const double u = pl.value / radius;
        parts.push_back(pl.measure * u * std::log(std::numbers::e + u));
    }
    return pairwise_sum(parts) / r.total_measure;
}

LuxemburgResult llogl_norm_detail(const DecreasingStep& r) {
    LuxemburgResult out;
    // The L^1 average is a lower bound since u log(e + u) >= u.
    double lo = r.mass() / r.total_measure;
    double hi = lo;
    while (llogl_functional(r, hi) > 1.0) {
        lo = hi;
        hi *= 2.0;
        ++out.iterations;
    }
    while ((hi - lo) > 1e-13 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (llogl_functional(r, mid) > 1.0)
            lo = mid;
        else
            hi = mid;
        ++out.iterations;
    }
    out.norm = hi;
    out.residual = llogl_functional(r, hi) - 1.0;
    return out;
}

double llogl_norm(const WeightGrid& w, const DyadicCube& q) {
    return llogl_norm_detail(rearrangement(w, q)).norm;
}

LLogLForms llogl_integral_forms(const DecreasingStep& r) {
    LLogLForms out;
    const double qm = r.total_measure;
    const double avg = r.mass() / qm;
    constexpr double e = std::numbers::e;
    std::vector<double> pa, pb;
    double s0 = 0.0;
    for (const auto& pl : r.plateaus) {
        pa.push_back(pl.measure * pl.value * std::log(e + pl.value / avg));
        const double s1 = s0 + pl.measure;
        // Antiderivative of log(e + Q/s): s log(e + Q/s) + (Q/e) log(e s + Q).
        const double head = s1 * std::log(e + qm / s1) - (s0 > 0.0 ? s0 * std::log(e + qm / s0) : 0.0);
        const double tail = (qm / e) * std::log1p(e * (s1 - s0) / (e * s0 + qm));
        pb.push_back(pl.value * (head + tail));
        s0 = s1;
    }
    out.a = pairwise_sum(pa) / qm;
    out.b = pairwise_sum(pb) / qm;
    return out;
}

LLogLForms llogl_integral_forms(const WeightGrid& w, const DyadicCube& q) {
    return llogl_integral_forms(rearrangement(w, q));
}

// --- extrapolation space -------------------------------------------------------

ExtrapolationNorm extrapolation_norm(const DecreasingStep& r) {
    ExtrapolationNorm out;
    const double qm = r.total_measure;
    std::vector<double> direct, via_k;
    double s0 = 0.0;
    double k0 = 0.0;
    for (std::size_t i = 0; i < r.plateaus.size(); ++i) {
        const auto& pl = r.plateaus[i];
        const double s1 = s0 + pl.measure;
        // int_{s0}^{s1} log(Q/s) ds with antiderivative s log(Q/s) + s.
        const double g1 = s1 * std::log(qm / s1) + s1;
        const double g0 = s0 > 0.0 ? s0 * std::log(qm / s0) + s0 : 0.0;
        direct.push_back(pl.value * (g1 - g0));
        // K = a + b s on the piece: int (a + b s)/s = a log(s1/s0) + b (s1 - s0).
        const double a = i == 0 ? 0.0 : std::max(0.0, k0 - pl.value * s0);
        via_k.push_back((i == 0 ? 0.0 : a * std::log(s1 / s0)) + pl.value * (s1 - s0));
        k0 += pl.value * pl.measure;
        s0 = s1;
    }
    out.value = pairwise_sum(direct);
    out.via_k = pairwise_sum(via_k);
    out.discrepancy = std::abs(out.value - out.via_k) / std::max(std::abs(out.value), 1e-300);
    return out;
}

ExtrapolationNorm extrapolation_norm(const WeightGrid& w, const DyadicCube& q) {
    return extrapolation_norm(rearrangement(w, q));
}

}  // namespace rhlab
