#pragma once

#include <span>
#include <vector>

#include "rhlab/grid.hpp"

namespace rhlab {

struct Plateau {
    double value;
    double measure;
};

/// Decreasing rearrangement as plateaus with strictly decreasing values.
/// f*(t) is right-continuous: plateau k covers [start_k, start_k + measure_k).
struct DecreasingStep {
    std::vector<Plateau> plateaus;
    double total_measure = 0.0;

    // Sum of value * measure over plateaus, pairwise-summed.
    double mass() const;
    // f*(t); zero for t >= sum of plateau measures.
    double value_at(double t) const;
    // Left limit f*(t-); equals value_at(t) away from plateau ends.
    double left_limit(double t) const;
    // Cumulative plateau ends (the breakpoints of the K-curve).
    std::vector<double> breakpoints() const;
};

/// Sort values descending and merge bit-equal runs; each value covers
/// cell_measure. total_measure defaults to the covered measure.
DecreasingStep rearrange_values(std::vector<double> values, double cell_measure);

DecreasingStep rearrangement(const WeightGrid& w, const DyadicCube& q);

/// f**(t) = (1/t) * int_0^t f*; for t >= total_measure the tail rule mass/t.
double double_star(const DecreasingStep& r, double t);

/// Local dyadic maximal function M_{Q0}(w chi_{Q0}), returned on Q0 rescaled to
/// the base cube (cell resolution unchanged, level L - level(Q0)).
WeightGrid dyadic_maximal(const WeightGrid& w, const DyadicCube& q0);

/// M_{Q0}(M_{Q0}(w chi_{Q0})).
WeightGrid iterated_maximal(const WeightGrid& w, const DyadicCube& q0);

}  // namespace rhlab
