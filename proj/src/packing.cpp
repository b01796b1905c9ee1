#include "rhlab/packing.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rhlab/reduce.hpp"

namespace rhlab {

namespace {

void check_pair(const WeightGrid& f, const WeightGrid& w) {
    if (f.dim() != w.dim() || f.level() != w.level())
        throw Error(ErrorCode::InvalidArgument, "function and weight live on different grids");
}

WeightGrid product(const WeightGrid& f, const WeightGrid& w) {
    std::vector<double> cells(f.size());
    for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = f.cell(i) * w.cell(i);
    return WeightGrid(f.dim(), f.level(), std::move(cells), f.label() + "*" + w.label());
}

}  // namespace

PackingFamily PackingFamily::all_levels(int dim, int level) {
    PackingFamily fam;
    fam.policy = "all-levels";
    const WeightGrid shape(dim, level, std::vector<double>(std::size_t{1} << (dim * level), 1.0));
    for (int l = 0; l <= level; ++l)
        fam.packings.push_back(enumerate_cubes(shape, CubeSelection::single_level(l)).cubes);
    return fam;
}

PackingFamily PackingFamily::cz_stopping(const WeightGrid& g, const WeightGrid& w) {
    check_pair(g, w);
    const SumPyramid gw(product(g, w));
    const SumPyramid pw(w);
    const auto all = enumerate_cubes(w, CubeSelection::all()).cubes;
    std::vector<double> avg(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) avg[i] = gw.sum(all[i]) / pw.sum(all[i]);
    std::vector<double> thresholds(avg);
    std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    PackingFamily fam;
    fam.policy = "cz-stopping";
    const int d = w.dim();
    for (double lambda : thresholds) {
        // Top-down: a cube is selected when it qualifies and no ancestor did.
        Packing pi;
        std::vector<char> covered(1, 0);
        std::size_t offset = 0;
        for (int l = 0; l <= w.level(); ++l) {
            const std::size_t count = std::size_t{1} << (d * l);
            std::vector<char> next(count, 0);
            const std::int64_t n = std::int64_t{1} << l;
            for (std::size_t k = 0; k < count; ++k) {
                std::size_t parent = 0;
                if (l > 0) {
                    if (d == 1) {
                        parent = k / 2;
                    } else {
                        const auto r = static_cast<std::int64_t>(k) / n;
                        const auto c = static_cast<std::int64_t>(k) % n;
                        parent = static_cast<std::size_t>((r / 2) * (n / 2) + c / 2);
                    }
                }
                const bool above = l > 0 && covered[parent];
                if (above) {
                    next[k] = 1;
                } else if (avg[offset + k] >= lambda) {
                    next[k] = 1;
                    pi.push_back(all[offset + k]);
                }
            }
            covered = std::move(next);
            offset += count;
        }
        fam.packings.push_back(std::move(pi));
    }
    return fam;
}

PackingFamily PackingFamily::explicit_list(std::vector<Packing> packings) {
    return {std::move(packings), "explicit"};
}

PackingFamily PackingFamily::merged(const PackingFamily& other) const {
    PackingFamily out = *this;
    out.packings.insert(out.packings.end(), other.packings.begin(), other.packings.end());
    out.policy = policy + "+" + other.policy;
    return out;
}

void check_packing(const Packing& pi, const WeightGrid& grid) {
    std::set<DyadicCube> sorted;
    for (const auto& q : pi) {
        grid.check_cube(q);
        if (!sorted.insert(q).second) throw Error(ErrorCode::OverlappingCubes, q.to_string(grid.dim()));
    }
    // A cube overlaps another exactly when one contains the other; check each
    // cube's ancestors against the set.
    for (const auto& q : sorted) {
        DyadicCube a = q;
        while (a.level > 0) {
            a.level -= 1;
            a.coords[0] >>= 1;
            a.coords[1] >>= 1;
            if (sorted.count(a))
                throw Error(ErrorCode::OverlappingCubes, a.to_string(grid.dim()) + " contains " +
                                                             q.to_string(grid.dim()));
        }
    }
}

std::vector<double> packing_average(const WeightGrid& f, const WeightGrid& w, const Packing& pi) {
    check_pair(f, w);
    check_packing(pi, w);
    std::vector<double> out;
    out.reserve(pi.size());
    for (const auto& q : pi) {
        const auto fv = f.values(q);
        auto wv = w.values(q);
        std::vector<double> fw(fv.size());
        for (std::size_t i = 0; i < fv.size(); ++i) fw[i] = fv[i] * wv[i];
        out.push_back(pairwise_sum(fw) / pairwise_sum(wv));
    }
    return out;
}

DecreasingStep weighted_rearrangement(const WeightGrid& g, const WeightGrid& w, const Packing& pi) {
    const auto vals = packing_average(g, w, pi);
    std::vector<std::pair<double, double>> items;
    items.reserve(pi.size());
    for (std::size_t i = 0; i < pi.size(); ++i) items.emplace_back(vals[i], integrate(w, pi[i]));
    std::sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first > y.first;
        return x.second < y.second;
    });
    DecreasingStep r;
    std::vector<double> measures;
    for (std::size_t i = 0; i < items.size();) {
        std::size_t j = i;
        measures.clear();
        while (j < items.size() && items[j].first == items[i].first) measures.push_back(items[j++].second);
        r.plateaus.push_back({items[i].first, pairwise_sum(measures)});
        i = j;
    }
    double total = 0.0;
    for (const auto& p : r.plateaus) total += p.measure;
    r.total_measure = total;
    return r;
}

WeightedK k_weighted(const WeightGrid& f, const WeightGrid& w, double p, double t,
                     const PackingFamily& family) {
    check_pair(f, w);
    if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "k_weighted requires p >= 1");
    if (family.packings.empty()) throw Error(ErrorCode::InvalidArgument, "empty packing family");
    const double wb = w.total_mass();
    if (!(t > 0.0 && t < wb)) throw Error(ErrorCode::InvalidArgument, "k_weighted requires 0 < t < w(base)");
    const WeightGrid g = f.map([p](double v) { return std::pow(std::abs(v), p); }, "|f|^p");
    WeightedK out;
    bool first = true;
    for (std::size_t i = 0; i < family.packings.size(); ++i) {
        const double v = weighted_rearrangement(g, w, family.packings[i]).value_at(t);
        if (first || v > out.sup_value) {
            out.sup_value = v;
            out.witness = i;
            first = false;
        }
    }
    out.estimate = std::pow(t, 1.0 / p) * std::pow(out.sup_value, 1.0 / p);
    return out;
}

}  // namespace rhlab
