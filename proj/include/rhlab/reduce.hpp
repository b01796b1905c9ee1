#pragma once

#include <cstddef>
#include <span>

namespace rhlab {

// Sum with a fixed binary tree: the range is split at the largest power of
// two strictly below its length, recursively. The association order depends
// only on the length, so results are reproducible across runs and thread
// counts. For power-of-two lengths this is the balanced tree used by the
// dyadic mass pyramid.
double pairwise_sum(std::span<const double> values);

}  // namespace rhlab
