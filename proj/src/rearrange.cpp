#include "rhlab/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "rhlab/reduce.hpp"

namespace rhlab {

double DecreasingStep::mass() const {
    std::vector<double> parts;
    parts.reserve(plateaus.size());
    for (const auto& p : plateaus) parts.push_back(p.value * p.measure);
    return pairwise_sum(parts);
}

double DecreasingStep::value_at(double t) const {
    double start = 0.0;
    for (const auto& p : plateaus) {
        const double end = start + p.measure;
        if (t < end) return p.value;
        start = end;
    }
    return 0.0;
}

double DecreasingStep::left_limit(double t) const {
    double start = 0.0;
    for (const auto& p : plateaus) {
        const double end = start + p.measure;
        if (t <= end) return p.value;
        start = end;
    }
    return 0.0;
}

std::vector<double> DecreasingStep::breakpoints() const {
    std::vector<double> out;
    out.reserve(plateaus.size());
    double start = 0.0;
    for (const auto& p : plateaus) {
        start += p.measure;
        out.push_back(start);
    }
    return out;
}

DecreasingStep rearrange_values(std::vector<double> values, double cell_measure) {
    std::sort(values.begin(), values.end(), std::greater<>());
    DecreasingStep r;
    std::size_t i = 0;
    while (i < values.size()) {
        std::size_t j = i;
        while (j < values.size() && values[j] == values[i]) ++j;
        r.plateaus.push_back({values[i], static_cast<double>(j - i) * cell_measure});
        i = j;
    }
    r.total_measure = static_cast<double>(values.size()) * cell_measure;
    return r;
}

DecreasingStep rearrangement(const WeightGrid& w, const DyadicCube& q) {
    auto r = rearrange_values(w.values(q), w.cell_measure());
    r.total_measure = q.measure(w.dim());
    return r;
}

double double_star(const DecreasingStep& r, double t) {
    if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "double_star requires t > 0");
    if (t >= r.total_measure) return r.mass() / t;
    double start = 0.0;
    double acc = 0.0;
    for (const auto& p : r.plateaus) {
        const double end = start + p.measure;
        if (t <= end) return (acc + p.value * (t - start)) / t;
        acc += p.value * p.measure;
        start = end;
    }
    return acc / t;
}

WeightGrid dyadic_maximal(const WeightGrid& w, const DyadicCube& q0) {
    const WeightGrid local = restrict_to(w, q0);
    const SumPyramid pyr(local);
    const int d = local.dim();
    const int depth = local.level();
    // Running max of ancestor averages, one level at a time.
    std::vector<double> run{pyr.average(DyadicCube::base())};
    for (int l = 1; l <= depth; ++l) {
        const std::int64_t n = std::int64_t{1} << l;
        const auto sums = pyr.level_sums(l);
        const double scale = std::ldexp(1.0, -d * (depth - l));
        std::vector<double> next(sums.size());
        if (d == 1) {
            for (std::int64_t i = 0; i < n; ++i)
                next[i] = std::max(run[i / 2], sums[i] * scale);
        } else {
            for (std::int64_t r = 0; r < n; ++r)
                for (std::int64_t c = 0; c < n; ++c)
                    next[r * n + c] = std::max(run[(r / 2) * (n / 2) + c / 2], sums[r * n + c] * scale);
        }
        run = std::move(next);
    }
    return WeightGrid(d, depth, std::move(run), "M_d(" + w.label() + ")@" + q0.to_string(d));
}

WeightGrid iterated_maximal(const WeightGrid& w, const DyadicCube& q0) {
    const WeightGrid m = dyadic_maximal(w, q0);
    return dyadic_maximal(m, DyadicCube::base());
}

}  // namespace rhlab
