#include <doctest.h>

#include <cmath>

#include "rhlab/packing.hpp"

using namespace rhlab;

TEST_CASE("packings must be disjoint") {
    const auto w = make_grid(1, 3, "const:1");
    check_packing({DyadicCube{1, {0, 0}}, DyadicCube{2, {2, 0}}}, w);
    try {
        check_packing({DyadicCube{1, {0, 0}}, DyadicCube{2, {1, 0}}}, w);
        FAIL("expected OverlappingCubes");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OverlappingCubes);
    }
}

TEST_CASE("weighted rearrangement of a packing") {
    const auto g = make_grid(1, 2, "step:4,1,3,1");
    const auto w = make_grid(1, 2, "step:1,1,2,2");
    const Packing pi{DyadicCube{1, {0, 0}}, DyadicCube{2, {2, 0}}};
    const auto avg = packing_average(g, w, pi);
    REQUIRE(avg.size() == 2);
    CHECK(avg[0] == doctest::Approx(2.5));
    CHECK(avg[1] == doctest::Approx(3.0));
    const auto r = weighted_rearrangement(g, w, pi);
    // w-masses: first cube 0.5, cell 2 is 0.5.
    CHECK(r.total_measure == doctest::Approx(1.0));
    CHECK(r.value_at(0.25) == doctest::Approx(3.0));
    CHECK(r.value_at(0.75) == doctest::Approx(2.5));
}

TEST_CASE("unweighted K is not reproduced at every t") {
    // f = [4, 1, 3, 1], w = 1, t = 1/2: every dyadic packing average lies
    // strictly between f*(t) and f**(t).
    const auto f = make_grid(1, 2, "step:4,1,3,1");
    const auto one = make_grid(1, 2, "const:1");
    const auto fam = PackingFamily::all_levels(1, 2).merged(PackingFamily::cz_stopping(f, one));
    const auto r = rearrangement(f, DyadicCube::base());
    const auto est = k_weighted(f, one, 1.0, 0.5, fam);
    CHECK(est.sup_value > r.value_at(0.5));
    CHECK(est.sup_value < double_star(r, 0.5));
    CHECK(est.estimate == doctest::Approx(0.5 * est.sup_value));
}

TEST_CASE("single-level packings reproduce coarsened rearrangements") {
    for (int d = 1; d <= 2; ++d) {
        const int level = d == 1 ? 5 : 3;
        const auto f = make_grid(d, level, "rand:6:lognormal:1");
        const auto one = make_grid(d, level, "const:1");
        const auto fam = PackingFamily::all_levels(d, level);
        for (int l = 0; l <= level; ++l) {
            const auto got = weighted_rearrangement(f, one, fam.packings[static_cast<std::size_t>(l)]);
            const auto expect = rearrangement(coarsen(f, level - l), DyadicCube::base());
            for (double t : expect.breakpoints())
                CHECK(got.value_at(t) == doctest::Approx(expect.value_at(t)).epsilon(1e-12));
        }
    }
}

TEST_CASE("cz stopping packings and family monotonicity") {
    const auto g = make_grid(1, 4, "rand:14:lognormal:1");
    const auto w = make_grid(1, 4, "rand:15:lognormal:0.5");
    const auto cz = PackingFamily::cz_stopping(g, w);
    CHECK_FALSE(cz.packings.empty());
    for (const auto& pi : cz.packings) check_packing(pi, g);
    const auto levels = PackingFamily::all_levels(1, 4);
    const auto merged = levels.merged(cz);
    CHECK(merged.packings.size() >= levels.packings.size());
    const double wb = w.total_mass();
    for (int i = 1; i < 32; ++i) {
        const double t = wb * i / 32.0;
        CHECK(k_weighted(g, w, 2.0, t, merged).sup_value >= k_weighted(g, w, 2.0, t, levels).sup_value);
    }
    CHECK_THROWS_AS(k_weighted(g, w, 2.0, wb, levels), Error);
    CHECK_THROWS_AS(k_weighted(g, w, 2.0, 0.0, levels), Error);
}
