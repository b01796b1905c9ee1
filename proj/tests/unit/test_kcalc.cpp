#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rhlab/curve.hpp"
#include "rhlab/kcalc.hpp"
#include "rhlab/quadrature.hpp"

using namespace rhlab;
using boost::math::quadrature::exp_sinh;
using boost::math::quadrature::tanh_sinh;

namespace {

constexpr double e = std::numbers::e;

// Sum of tanh-sinh integrals over consecutive breakpoints of a step function.
template <class F>
double piecewise_quad(F f, const std::vector<double>& cuts) {
    tanh_sinh<double> ts;
    double total = 0.0;
    for (std::size_t i = 1; i < cuts.size(); ++i)
        if (cuts[i] > cuts[i - 1]) total += ts.integrate(f, cuts[i - 1], cuts[i]);
    return total;
}

std::vector<double> plateau_cuts(const DecreasingStep& r) {
    std::vector<double> cuts{0.0};
    double t = 0.0;
    for (const auto& p : r.plateaus) cuts.push_back(t += p.measure);
    return cuts;
}

// Brute-force int_0^t f* from sorted cells.
double brute_k(std::vector<double> v, double h, double t) {
    std::sort(v.rbegin(), v.rend());
    long double acc = 0, left = t;
    for (double x : v) {
        const long double take = std::min<long double>(left, h);
        if (take <= 0) break;
        acc += x * take;
        left -= take;
    }
    return static_cast<double>(acc);
}

}  // namespace

TEST_CASE("adaptive quadrature and power pieces") {
    const auto r = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
    tanh_sinh<double> ts;
    for (double q : {1.0, 2.0, 3.0, 1.5, 2.7})
        for (double kappa : {0.2, 0.9, 1.4})
            for (auto [a, b] : {std::pair{0.0, 2.0}, std::pair{1.5, 0.0}, std::pair{0.3, 1.7}}) {
                const double u0 = a > 0.0 && kappa > 0.0 ? 0.05 : 0.0;
                if (a == 0.0 && kappa >= q) continue;
                const double got = power_piece_integral(a, b, q, kappa, u0, 0.8);
                // Two-argument form: near u0 = 0 the abscissa is taken from the
                // distance to the endpoint so it never rounds to 0.
                const double oracle = ts.integrate(
                    [&](double x, double xc) {
                        const double s = (u0 == 0.0 && x < 0.4) ? -xc : x;
                        return std::exp(q * std::log(a + b * s) - (kappa + 1.0) * std::log(s));
                    },
                    u0, 0.8);
                CHECK(got == doctest::Approx(oracle).epsilon(1e-9));
            }
    CHECK(std::isinf(power_piece_integral(1.0, 1.0, 2.0, 0.5, 0.0, 1.0)));
    CHECK(power_integral(0.5, 1.0, 1.0 + 1e-12) == doctest::Approx(1e-12).epsilon(1e-10));
}

TEST_CASE("K(L1, Linf) of step 2,1") {
    const auto k = k_l1_linf(make_grid(1, 4, "step:2,1"), DyadicCube::base());
    CHECK(k.knots() == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(k.values() == std::vector<double>{0.0, 1.0, 1.5});
    CHECK(k.value(0.25) == 0.5);
    CHECK(k.value(3.0) == 1.5);
}

TEST_CASE("K curves agree with brute force") {
    const auto w = make_grid(1, 7, "rand:31:lognormal:1");
    for (const auto& q : {DyadicCube::base(), DyadicCube{2, {3, 0}}}) {
        std::vector<double> vals;
        for (auto i : w.cell_indices(q)) vals.push_back(w.cell(i));
        const auto k = k_l1_linf(w, q);
        std::vector<double> pv;
        for (double v : vals) pv.push_back(std::pow(v, 2.5));
        const auto g = k_lp_linf(w, q, 2.5);
        for (double t : {0.001, 0.01, 0.1, 0.2, 0.25}) {
            if (t > q.measure(1)) continue;
            CHECK(k.value(t) == doctest::Approx(brute_k(vals, w.cell_measure(), t)).epsilon(1e-13));
            CHECK(g.value(t) == doctest::Approx(std::pow(brute_k(pv, w.cell_measure(), t), 1 / 2.5)).epsilon(1e-12));
        }
    }
}

TEST_CASE("Holmstedt curve against quadrature") {
    const auto flat = holmstedt_curve(k_l1_linf(make_grid(1, 3, "const:1"), DyadicCube::base()), 0.5, 2.0);
    for (double t : {0.1, 0.5, 1.0}) CHECK(flat.value(t) == doctest::Approx(t).epsilon(1e-12));

    const auto w = make_grid(1, 5, "rand:8:lognormal:0.5");
    const auto k = k_l1_linf(w, DyadicCube::base());
    for (auto [theta, q] : {std::pair{0.5, 2.0}, std::pair{0.3, 1.5}, std::pair{0.8, 3.0}}) {
        const auto h = holmstedt_curve(k, theta, q);
        for (double t : {0.05, 0.4, 0.9, 1.3}) {
            const double upper = std::pow(t, 1.0 / (1.0 - theta));
            std::vector<double> cuts;
            for (double x : k.knots())
                if (x < upper) cuts.push_back(x);
            cuts.push_back(upper);
            const double inner = piecewise_quad(
                [&](double s) { return std::pow(std::pow(s, -theta) * k.value(s), q) / s; }, cuts);
            CHECK(h.integral_to(upper) == doctest::Approx(inner).epsilon(1e-9));
            CHECK(h.value(t) == doctest::Approx(std::pow(inner, 1.0 / q)).epsilon(1e-9));
        }
    }
}

TEST_CASE("Lorentz norms against quadrature") {
    const auto one = rearrangement(make_grid(1, 2, "const:1"), DyadicCube::base());
    // ||1||_{L(p,q)} on [0,1] with f**: (p/q + p'/q)^{1/q}.
    for (auto [p, q] : {std::pair{2.0, 2.0}, std::pair{2.0, 3.0}, std::pair{1.5, 2.0}}) {
        const double pp = p / (p - 1.0);
        CHECK(lorentz_norm(one, p, q) == doctest::Approx(std::pow(p / q + pp / q, 1.0 / q)).epsilon(1e-12));
    }
    const auto w = make_grid(1, 4, "rand:4:lognormal:1");
    const auto r = rearrangement(w, DyadicCube::base());
    for (auto [p, q] : {std::pair{2.0, 2.0}, std::pair{3.0, 1.5}}) {
        const auto cuts = plateau_cuts(r);
        const double head =
            piecewise_quad([&](double t) { return std::pow(std::pow(t, 1.0 / p) * double_star(r, t), q) / t; }, cuts);
        exp_sinh<double> es;
        const double tail =
            es.integrate([&](double t) { return std::pow(std::pow(t, 1.0 / p) * double_star(r, t), q) / t; },
                         1.0, std::numeric_limits<double>::infinity());
        CHECK(lorentz_norm(r, p, q) == doctest::Approx(std::pow(head + tail, 1.0 / q)).epsilon(1e-9));
        for (double t : {0.3, 0.8}) {
            std::vector<double> c2;
            for (double x : cuts)
                if (x < std::pow(t, p)) c2.push_back(x);
            c2.push_back(std::pow(t, p));
            const double k = piecewise_quad(
                [&](double s) { return std::pow(r.value_at(std::min(s, 1.0 - 1e-16)) * std::pow(s, 1.0 / p), q) / s; }, c2);
            CHECK(k_lorentz_linf(r, p, q, t) == doctest::Approx(std::pow(k, 1.0 / q)).epsilon(1e-9));
        }
    }
}

TEST_CASE("LLogL Luxemburg norm") {
    // Constant c: the norm r solves (c/r) log(e + c/r) = 1.
    auto tol = [](double a, double b) { return std::abs(a - b) < 1e-15; };
    const auto [lo, hi] = boost::math::tools::bisect([](double u) { return u * std::log(e + u) - 1.0; }, 0.1, 2.0, tol);
    const double u = 0.5 * (lo + hi);
    for (double c : {1.0, 3.0}) {
        const auto w = make_grid(1, 3, "const:" + format_double(c));
        const auto res = llogl_norm_detail(rearrangement(w, DyadicCube::base()));
        CHECK(res.norm == doctest::Approx(c / u).epsilon(1e-12));
        CHECK(std::abs(res.residual) <= 1e-9);
    }
    const auto w = make_grid(1, 6, "rand:77:lognormal:1");
    const auto r = rearrangement(w, DyadicCube::base());
    const double n = llogl_norm(w, DyadicCube::base());
    CHECK(llogl_functional(r, n) == doctest::Approx(1.0).epsilon(1e-9));
    // Direct cellwise functional.
    long double s = 0;
    for (double v : w.cells()) s += (v / n) * std::log(e + v / n);
    CHECK(static_cast<double>(s / w.size()) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("LLogL integral forms") {
    const auto forms = llogl_integral_forms(make_grid(1, 4, "const:1"), DyadicCube::base());
    CHECK(forms.a == doctest::Approx(std::log(e + 1.0)).epsilon(1e-14));
    tanh_sinh<double> ts;
    const double b = ts.integrate([](double s) { return std::log(e + 1.0 / s); }, 0.0, 1.0);
    CHECK(forms.b == doctest::Approx(b).epsilon(1e-12));
    CHECK(forms.b == doctest::Approx(std::log(e + 1.0) * (1.0 + 1.0 / e)).epsilon(1e-12));

    const auto w = make_grid(1, 5, "rand:12:lognormal:1");
    const auto r = rearrangement(w, DyadicCube::base());
    const auto f = llogl_integral_forms(r);
    const double bq = piecewise_quad([&](double s) { return r.value_at(s) * std::log(e + 1.0 / s); }, plateau_cuts(r));
    CHECK(f.b == doctest::Approx(bq).epsilon(1e-10));
    const double avg = r.mass();
    long double a = 0;
    for (double v : w.cells()) a += v * std::log(e + v / avg);
    CHECK(f.a == doctest::Approx(static_cast<double>(a / w.size())).epsilon(1e-12));
}

TEST_CASE("extrapolation norm") {
    const auto one = extrapolation_norm(make_grid(1, 3, "const:1"), DyadicCube::base());
    CHECK(one.value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(one.via_k == doctest::Approx(1.0).epsilon(1e-14));
    const auto w = make_grid(1, 6, "pow:-0.5");
    const auto r = rearrangement(w, DyadicCube::base());
    const auto x = extrapolation_norm(r);
    const double oracle = piecewise_quad([&](double s) { return r.value_at(s) * std::log(1.0 / s); }, plateau_cuts(r));
    CHECK(x.value == doctest::Approx(oracle).epsilon(1e-11));
    CHECK(x.discrepancy <= 1e-12);
}

TEST_CASE("curve validation") {
    CHECK_THROWS_AS(ConcaveCurve({0.0, 1.0, 2.0}, {0.0, 1.0, 3.0}, {1.0, 2.0}), Error);
    CHECK_THROWS_AS(PiecewiseLinear({Piece{0.1, 1.0, 0.0, 1.0}}, 1.0), Error);
    const auto pl = PiecewiseLinear::through_points({0.0, 1.0, 2.0}, {0.0, 2.0, 3.0});
    CHECK(pl.value(0.5) == 1.0);
    CHECK(pl.value(1.5) == 2.5);
    CHECK(pl.first_breakpoint() == 1.0);
}
