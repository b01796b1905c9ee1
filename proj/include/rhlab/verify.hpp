#pragma once

#include "rhlab/grid.hpp"
#include "rhlab/indices.hpp"
#include "rhlab/packing.hpp"
#include "rhlab/report.hpp"

namespace rhlab {

/// ||w||_{RH_p} against sup_Q of the K-side constant; passes when their ratio
/// lies in [1/radius, radius].
TheoremReport verify_rhp_equivalence(const WeightGrid& w, double p, const CubeFamily& family,
                                     double radius = 8.0);

/// rh_llogl_constant against sup_Q hardy_residual(K_Q), comparability radius.
TheoremReport verify_llogl_equivalence(const WeightGrid& w, const CubeFamily& family, double radius = 8.0);

/// K-curve index > margin  <=>  ACKS lambda_hat < 1 - margin.
TheoremReport verify_acks(const WeightGrid& w, const CubeFamily& family, const IndexOptions& options = {},
                          double margin = 0.02, bool asserted = true,
                          const IndexEstimate* k_index = nullptr);

/// w in RH_p (K index > 1/p')  <=>  w^p in A_inf (K index of w^p > margin).
/// For pow:a labels with a p <= -1 the power is not locally integrable and
/// w^p is classified out of A_inf without building it.
TheoremReport verify_stromberg_wheeden(const WeightGrid& w, double p, const CubeFamily& family,
                                       const IndexOptions& options = {}, double margin = 0.02,
                                       const IndexEstimate* k_index = nullptr);

/// fujii_constant <= c (k^2 + k + 1), k = rh_llogl_constant; reports the
/// cellwise constant of M_d(M_d w) <= C M_d w on the base cube.
TheoremReport verify_fujii(const WeightGrid& w, const CubeFamily& family, double c = 4.0);

/// int_0^{|Q|} K(r, M_d(w chi_Q)) dr/r <= c ||w||_{L^1(Q)} (k^2 + k + 1) with
/// k = hardy_residual(K_Q), plus the weak-type residual
/// sup_t t (M_d(w chi_Q))*(t-) / K(t, w chi_Q) <= 1 + 1e-9.
TheoremReport verify_extrapolation_bound(const WeightGrid& w, const DyadicCube& q, double c = 4.0);

/// t^{1-1/p} K_p(t) <= C K_1(t) at every breakpoint t of the packing
/// rearrangements and at the midpoints between them,
/// where K_p is k_weighted at exponent p over the same
/// family and C = rh_p_weighted_constant(g, w, p) over all dyadic cubes.
TheoremReport verify_weighted_rh(const WeightGrid& g, const WeightGrid& w, double p,
                                 const PackingFamily& packings);

}  // namespace rhlab
