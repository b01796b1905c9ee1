#pragma once

#include <string>
#include <vector>

#include "rhlab/grid.hpp"
#include "rhlab/rearrange.hpp"

namespace rhlab {

/// A finite set of pairwise disjoint dyadic cubes.
using Packing = std::vector<DyadicCube>;

struct PackingFamily {
    std::vector<Packing> packings;
    std::string policy;  // "all-levels", "cz-stopping", "explicit", or a '+' join

    // Every single-level packing {all cubes of level l}, l = 0..L.
    static PackingFamily all_levels(int dim, int level);
    // Calderon-Zygmund stopping packings of g with respect to w: for each
    // distinct w-average lambda of g over a dyadic cube, the maximal cubes
    // whose w-average of g is >= lambda.
    static PackingFamily cz_stopping(const WeightGrid& g, const WeightGrid& w);
    static PackingFamily explicit_list(std::vector<Packing> packings);

    PackingFamily merged(const PackingFamily& other) const;
};

void check_packing(const Packing& pi, const WeightGrid& grid);  // throws OverlappingCubes

/// S_pi(f) = sum_i (1/w(Q_i)) int_{Q_i} f w chi_{Q_i}: one value per cube of pi.
std::vector<double> packing_average(const WeightGrid& f, const WeightGrid& w, const Packing& pi);

/// Rearrangement of S_pi(g) with respect to w(x)dx: plateau measures are
/// w-masses; the total measure is w(union of pi). Values off the packing are
/// excluded.
DecreasingStep weighted_rearrangement(const WeightGrid& g, const WeightGrid& w, const Packing& pi);

struct WeightedK {
    double estimate = 0.0;   // t^{1/p} * F^{1/p}
    double sup_value = 0.0;  // F = max over pi of (S_pi |f|^p)*_w(t)
    std::size_t witness = 0; // index of the first packing attaining F
};

/// Estimate of K(t^{1/p}, f; L^p_w, L^inf) by t^{1/p} [sup_pi (S_pi |f|^p)*_w(t)]^{1/p}
/// over the given family; a lower bound of the sup over all packings.
WeightedK k_weighted(const WeightGrid& f, const WeightGrid& w, double p, double t,
                     const PackingFamily& family);

}  // namespace rhlab
