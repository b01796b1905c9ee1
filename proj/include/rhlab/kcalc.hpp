#pragma once

#include "rhlab/curve.hpp"
#include "rhlab/grid.hpp"
#include "rhlab/rearrange.hpp"

namespace rhlab {

/// K(t, w chi_Q; L^1, L^inf) = int_0^t (w chi_Q)*; domain_end = |Q|.
ConcaveCurve k_l1_linf(const WeightGrid& w, const DyadicCube& q);

/// G(t) = (int_0^t (w chi_Q)*^p)^{1/p}, the (L^p, L^inf) K-functional in the
/// variable t (K(t^{1/p}) up to constants). G^p is stored exactly as a concave
/// piecewise-linear curve.
class LpCurve {
public:
    LpCurve(ConcaveCurve power_curve, double p) : power_(std::move(power_curve)), p_(p) {}
    double value(double t) const;
    double p() const { return p_; }
    const ConcaveCurve& power_curve() const { return power_; }

private:
    ConcaveCurve power_;
    double p_;
};

LpCurve k_lp_linf(const WeightGrid& w, const DyadicCube& q, double p);
LpCurve k_lp_linf(const DecreasingStep& r, double p);

/// H(t) = (int_0^{t^{1/(1-theta)}} [s^{-theta} K(s)]^q ds/s)^{1/q}.
class HolmstedtCurve {
public:
    HolmstedtCurve(ConcaveCurve k, double theta, double q);

    double value(double t) const;
    // The inner integral int_0^T [s^{-theta} K(s)]^q ds/s.
    double integral_to(double upper) const;
    double theta() const { return theta_; }
    double q() const { return q_; }
    const ConcaveCurve& base() const { return k_; }

private:
    ConcaveCurve k_;
    double theta_;
    double q_;
    std::vector<double> cumulative_;  // integral up to each knot of K
};

HolmstedtCurve holmstedt_curve(const ConcaveCurve& k, double theta, double q);

/// L(p,q) norm of w chi_Q over (0, inf), with f**(t) = mass / t past |Q|.
double lorentz_norm(const WeightGrid& w, const DyadicCube& q, double p, double qexp);
double lorentz_norm(const DecreasingStep& r, double p, double qexp);

/// (int_0^{t^p} [w*(s) s^{1/p}]^q ds/s)^{1/q}.
double k_lorentz_linf(const WeightGrid& w, const DyadicCube& q, double p, double qexp, double t);
double k_lorentz_linf(const DecreasingStep& r, double p, double qexp, double t);

struct LuxemburgResult {
    double norm = 0.0;
    double residual = 0.0;  // defining integral at norm, minus 1
    int iterations = 0;
};

/// Luxemburg norm in LLogL(Q, dx/|Q|) with Young function u log(e + u).
double llogl_norm(const WeightGrid& w, const DyadicCube& q);
LuxemburgResult llogl_norm_detail(const DecreasingStep& r);
// (1/|Q|) int_Q Phi(f / r), evaluated from the plateaus.
double llogl_functional(const DecreasingStep& r, double radius);

struct LLogLForms {
    double a = 0.0;  // (1/|Q|) int_Q f log(e + f / avg f)
    double b = 0.0;  // (1/|Q|) int_0^{|Q|} f*(s) log(e + |Q|/s) ds
};
LLogLForms llogl_integral_forms(const WeightGrid& w, const DyadicCube& q);
LLogLForms llogl_integral_forms(const DecreasingStep& r);

struct ExtrapolationNorm {
    double value = 0.0;       // int_0^{|Q|} f*(s) log(|Q|/s) ds
    double via_k = 0.0;       // int_0^{|Q|} K(s) ds/s
    double discrepancy = 0.0; // relative difference of the two
};
ExtrapolationNorm extrapolation_norm(const WeightGrid& w, const DyadicCube& q);
ExtrapolationNorm extrapolation_norm(const DecreasingStep& r);

}  // namespace rhlab
