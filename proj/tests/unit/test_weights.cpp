#include <doctest.h>

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <numbers>

#include "rhlab/kcalc.hpp"
#include "rhlab/weights.hpp"

using namespace rhlab;

namespace {

struct Sums {
    long double n = 0, w = 0, wp = 0, winv = 0;
};

Sums cube_sums(const WeightGrid& w, const DyadicCube& q, double p) {
    Sums s;
    for (auto i : w.cell_indices(q)) {
        const double v = w.cell(i);
        s.n += 1;
        s.w += v;
        s.wp += std::pow(static_cast<long double>(v), p);
        s.winv += std::pow(static_cast<long double>(v), -1.0 / (p - 1.0));
    }
    return s;
}

}  // namespace

TEST_CASE("constants of a constant weight are 1") {
    const auto w = make_grid(2, 3, "const:5");
    const auto all = enumerate_cubes(w, CubeSelection::all());
    CHECK(rh_p_constant(w, 2.0, all).value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(a_p_constant(w, 2.0, all).value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(a_p_constant(w, 1.0, all).value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(fujii_constant(w, all).value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(k_side_rh_constant(k_l1_linf(w, DyadicCube::base()), 2.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rh_lorentz_constant(w, 2.0, 2.0, all).value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    // LLogL: 1 / u where u log(e + u) = 1.
    auto tol = [](double a, double b) { return std::abs(a - b) < 1e-15; };
    const auto [lo, hi] = boost::math::tools::bisect(
        [](double u) { return u * std::log(std::numbers::e + u) - 1.0; }, 0.1, 2.0, tol);
    CHECK(rh_llogl_constant(w, all).value == doctest::Approx(2.0 / (lo + hi)).epsilon(1e-12));
    CHECK(to_string(ConstantKind::RhLLogL) == "RH_LLogL");
}

TEST_CASE("RH_p and A_p against brute force") {
    for (int d = 1; d <= 2; ++d) {
        const auto w = make_grid(d, d == 1 ? 7 : 4, "rand:19:lognormal:1");
        const auto all = enumerate_cubes(w, CubeSelection::all());
        for (double p : {1.5, 2.0, 3.0}) {
            long double rh = 0, ap = 0;
            for (const auto& q : all.cubes) {
                const auto s = cube_sums(w, q, p);
                rh = std::max(rh, std::pow(s.wp / s.n, 1.0L / p) / (s.w / s.n));
                ap = std::max(ap, (s.w / s.n) * std::pow(s.winv / s.n, p - 1.0L));
            }
            CHECK(rh_p_constant(w, p, all).value == doctest::Approx(static_cast<double>(rh)).epsilon(1e-12));
            CHECK(a_p_constant(w, p, all).value == doctest::Approx(static_cast<double>(ap)).epsilon(1e-12));
        }
        const auto one = make_grid(d, w.level(), "const:1");
        CHECK(rh_p_weighted_constant(w, one, 2.0, all).value ==
              doctest::Approx(rh_p_constant(w, 2.0, all).value).epsilon(1e-12));
    }
}

TEST_CASE("A_1 of a step weight") {
    const auto w = make_grid(1, 2, "step:4,1,1,1");
    // Cell 1: ancestors average (4+1)/2 and 7/4; max 2.5 over w = 1.
    CHECK(a_p_constant(w, 1.0, enumerate_cubes(w, CubeSelection::all())).value == doctest::Approx(2.5));
}

TEST_CASE("RH_p of x^{-1/2} approaches the continuum value from below") {
    const double limit = std::cbrt(2.0);  // (int x^{-3/4})^{2/3} / int x^{-1/2}
    double prev = 0.0;
    for (int level : {10, 12, 14}) {
        const auto w = make_grid(1, level, "pow:-0.5");
        const double v = rh_p_constant(w, 1.5, enumerate_cubes(w, CubeSelection::all())).value;
        CHECK(v > prev);
        CHECK(v < limit);
        prev = v;
    }
    CHECK(prev == doctest::Approx(limit).epsilon(0.03));
}

TEST_CASE("Fujii constant is bounded through the LLogL constant") {
    for (const char* spec : {"pow:-0.5", "step:1,2,4,8", "rand:3:lognormal:1"}) {
        const auto w = make_grid(1, 8, spec);
        const auto all = enumerate_cubes(w, CubeSelection::all());
        const double k = rh_llogl_constant(w, all).value;
        CHECK(fujii_constant(w, all).value <= 4.0 * (k * k + k + 1.0));
    }
}

TEST_CASE("Gehring improvement") {
    const auto w = make_grid(1, 12, "pow:-0.5");
    const auto all = enumerate_cubes(w, CubeSelection::all());
    const auto g = gehring_improve(w, 1.5, all);
    CHECK(g.p_max == doctest::Approx(2.0).epsilon(0.05));
    CHECK(g.p0 > 1.6);
    CHECK(g.p0 < 1.95);
    CHECK(g.certificate);
    const auto bad = make_grid(1, 12, "pow:-0.75");
    try {
        gehring_improve(bad, 1.5, enumerate_cubes(bad, CubeSelection::all()));
        FAIL("expected Precondition");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Precondition);
    }
    const auto flat = make_grid(1, 6, "const:1");
    CHECK(gehring_improve(flat, 2.0, enumerate_cubes(flat, CubeSelection::all())).capped);
}
