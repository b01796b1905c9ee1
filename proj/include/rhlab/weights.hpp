#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "rhlab/grid.hpp"
#include "rhlab/indices.hpp"

namespace rhlab {

enum class ConstantKind { RhP, Ap, A1, RhLLogL, RhLorentz, Fujii, RhPWeighted };

std::string_view to_string(ConstantKind kind);

/// A weight-class constant: the max of the defining ratio over a cube family.
struct ClassConstant {
    ConstantKind kind = ConstantKind::RhP;
    double value = 1.0;
    std::optional<double> p;
    std::optional<double> q;
    DyadicCube witness;  // first cube (family order) attaining the max
    std::string cube_policy;
};

/// (avg_Q w^p)^{1/p} / avg_Q w.
ClassConstant rh_p_constant(const WeightGrid& w, double p, const CubeFamily& family);

/// p > 1: (avg_Q w)(avg_Q w^{-1/(p-1)})^{p-1}; p = 1: max over cells of M_d w / w
/// on the base cube (the family is ignored, witness is the cell).
ClassConstant a_p_constant(const WeightGrid& w, double p, const CubeFamily& family);

/// ||w||_{LLogL(Q, dx/|Q|)} / avg_Q w.
ClassConstant rh_llogl_constant(const WeightGrid& w, const CubeFamily& family);

/// ||w chi_Q||_{L(p,q)} / (|Q|^{1/p} avg_Q w).
ClassConstant rh_lorentz_constant(const WeightGrid& w, double p, double q, const CubeFamily& family);

/// int_Q M_d(w chi_Q) / int_Q w.
ClassConstant fujii_constant(const WeightGrid& w, const CubeFamily& family);

/// (w(Q)^{-1} int_Q g^p w)^{1/p} / (w(Q)^{-1} int_Q g w).
ClassConstant rh_p_weighted_constant(const WeightGrid& g, const WeightGrid& w, double p,
                                     const CubeFamily& family);

struct GehringResult {
    double index = 0.0;   // family index of the K-curves
    double p_max = 0.0;   // 1 / (1 - index), capped
    double p0 = 0.0;      // (p + p_max) / 2
    bool capped = false;
    bool certificate = false;  // index > 1 - 1/p0
    IndexEstimate estimate;
};

inline constexpr double kGehringCap = 64.0;

/// Self-improvement of RH_p through the K-curve index. Throws Precondition
/// when the index does not exceed 1/p'.
GehringResult gehring_improve(const WeightGrid& w, double p, const CubeFamily& family,
                              const IndexOptions& options = {});
GehringResult gehring_improve(const IndexEstimate& estimate, double p);

/// sup over t in (0, |Q|] of (int_0^t f**^p)^{1/p} / (t^{1/p} f**(t)), the
/// K-side RH_p constant of one cube (Holmstedt form at theta = 1/p', q = p).
double k_side_rh_constant(const ConcaveCurve& k, double p);

}  // namespace rhlab
