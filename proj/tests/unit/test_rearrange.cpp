#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "rhlab/grid.hpp"
#include "rhlab/rearrange.hpp"

using namespace rhlab;

namespace {

// Cells of q in any order, with the cell measure.
std::vector<double> cube_values(const WeightGrid& w, const DyadicCube& q) {
    std::vector<double> v;
    for (auto i : w.cell_indices(q)) v.push_back(w.cell(i));
    return v;
}

// Average over q computed by direct summation.
long double brute_average(const WeightGrid& w, const DyadicCube& q) {
    long double s = 0;
    const auto v = cube_values(w, q);
    for (double x : v) s += x;
    return s / v.size();
}

}  // namespace

TEST_CASE("rearrangement of a step weight") {
    const auto w = make_grid(1, 3, "step:1,3,2,3");
    const auto r = rearrangement(w, DyadicCube::base());
    REQUIRE(r.plateaus.size() == 3);
    CHECK(r.plateaus[0].value == 3.0);
    CHECK(r.plateaus[0].measure == 0.5);
    CHECK(r.plateaus[1].value == 2.0);
    CHECK(r.plateaus[2].value == 1.0);
    CHECK(r.total_measure == 1.0);
    CHECK(r.value_at(0.0) == 3.0);
    CHECK(r.value_at(0.5) == 2.0);
    CHECK(r.left_limit(0.5) == 3.0);
    CHECK(r.value_at(0.9) == 1.0);
    CHECK(r.mass() == 2.25);
    CHECK(double_star(r, 0.75) == doctest::Approx((1.5 + 0.5) / 0.75));
    // Past |Q| the tail rule mass / t applies.
    CHECK(double_star(r, 4.0) == doctest::Approx(2.25 / 4.0));
    CHECK_THROWS_AS(double_star(r, 0.0), Error);
}

TEST_CASE("rearrangement is equimeasurable (distribution function check)") {
    for (int d = 1; d <= 2; ++d) {
        const auto w = make_grid(d, d == 1 ? 8 : 4, "rand:17:lognormal:1").map(
            [](double v) { return std::round(v * 2.0) / 2.0 + 0.5; }, "quantized");
        for (const auto& q : enumerate_cubes(w, CubeSelection::all()).cubes) {
            const auto r = rearrangement(w, q);
            const auto vals = cube_values(w, q);
            CHECK(r.total_measure == q.measure(d));
            for (const auto& pl : r.plateaus) {
                // |{f >= value}| from cells equals the rearrangement's measure.
                const auto above = std::count_if(vals.begin(), vals.end(), [&](double v) { return v >= pl.value; });
                double measure = 0.0;
                for (const auto& pp : r.plateaus)
                    if (pp.value >= pl.value) measure += pp.measure;
                CHECK(measure == doctest::Approx(above * w.cell_measure()).epsilon(1e-14));
            }
            for (std::size_t i = 1; i < r.plateaus.size(); ++i) CHECK(r.plateaus[i].value < r.plateaus[i - 1].value);
        }
    }
}

TEST_CASE("f** agrees with direct integration of the sorted cells") {
    const auto w = make_grid(1, 6, "rand:2:lognormal:1");
    auto vals = cube_values(w, DyadicCube::base());
    std::sort(vals.rbegin(), vals.rend());
    const auto r = rearrangement(w, DyadicCube::base());
    const double h = w.cell_measure();
    for (double t : {0.3 * h, h, 2.5 * h, 0.37, 0.999, 1.0}) {
        long double acc = 0, left = t;
        for (double v : vals) {
            const long double take = std::min<long double>(left, h);
            acc += v * take;
            left -= take;
            if (left <= 0) break;
        }
        CHECK(double_star(r, t) == doctest::Approx(static_cast<double>(acc / t)).epsilon(1e-13));
    }
}

TEST_CASE("dyadic maximal function equals the brute-force max of ancestor averages") {
    for (int d = 1; d <= 2; ++d) {
        const auto w = make_grid(d, d == 1 ? 7 : 4, "rand:23:lognormal:1");
        for (const auto& q0 : {DyadicCube::base(), DyadicCube{1, {1, 0}}}) {
            const auto m = dyadic_maximal(w, q0);
            CHECK(m.level() == w.level() - q0.level);
            // Cell k of m corresponds to the k-th cell of restrict_to(w, q0).
            const auto rw = restrict_to(w, q0);
            for (const auto& cell : enumerate_cubes(rw, CubeSelection::single_level(rw.level())).cubes) {
                long double best = 0;
                for (int l = 0; l <= rw.level(); ++l) {
                    DyadicCube anc{l, {cell.coords[0] >> (rw.level() - l), cell.coords[1] >> (rw.level() - l)}};
                    best = std::max(best, brute_average(rw, anc));
                }
                const auto idx = rw.cell_indices(cell).front();
                CHECK(m.cell(idx) == doctest::Approx(static_cast<double>(best)).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("iterated maximal function dominates the maximal function") {
    const auto w = make_grid(1, 6, "pow:-0.5");
    const auto m = dyadic_maximal(w, DyadicCube::base());
    const auto mm = iterated_maximal(w, DyadicCube::base());
    for (std::size_t i = 0; i < m.size(); ++i) CHECK(mm.cell(i) >= m.cell(i) * (1 - 1e-15));
}
