#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "rhlab/error.hpp"
#include "rhlab/grid.hpp"
#include "rhlab/reduce.hpp"
#include "rhlab/rng.hpp"

using namespace rhlab;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an rhlab::Error");
    return ErrorCode::Precondition;
}

std::string tmp_path(const std::string& name) { return std::string(RHLAB_TEST_TMP) + "/" + name; }

void write_file(const std::string& path, const std::string& text) {
    std::ofstream(path, std::ios::binary | std::ios::trunc) << text;
}

// Brute-force cube sum over row-major cells.
long double brute_sum(const WeightGrid& w, const DyadicCube& q) {
    const std::int64_t side = std::int64_t{1} << (w.level() - q.level);
    long double s = 0;
    if (w.dim() == 1) {
        for (std::int64_t i = 0; i < side; ++i) s += w.cell(static_cast<std::size_t>(q.coords[0] * side + i));
    } else {
        const std::int64_t n = w.cells_per_axis();
        for (std::int64_t i = 0; i < side; ++i)
            for (std::int64_t j = 0; j < side; ++j)
                s += w.cell(static_cast<std::size_t>((q.coords[0] * side + i) * n + q.coords[1] * side + j));
    }
    return s;
}

}  // namespace

TEST_CASE("splitmix64 matches the reference stream") {
    // Reference outputs of the sequential SplitMix64 generator seeded with 0.
    const CounterRng rng(0);
    CHECK(rng.bits(0) == 0xE220A8397B1DCDAFULL);
    CHECK(rng.bits(1) == 0x6E789E6AA1B965F4ULL);
    CHECK(rng.bits(2) == 0x06C45D188009454FULL);
    const double u = rng.uniform(5);
    CHECK(u > 0.0);
    CHECK(u < 1.0);
}

TEST_CASE("normal draws have plausible moments") {
    const CounterRng rng(42);
    const int n = 20000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal(static_cast<std::uint64_t>(i));
        s += z;
        s2 += z * z;
    }
    CHECK(std::abs(s / n) < 0.05);
    CHECK(std::abs(s2 / n - 1.0) < 0.05);
}

TEST_CASE("generators") {
    const auto c = make_grid(1, 3, "const:2.5");
    CHECK(c.size() == 8);
    for (double v : c.cells()) CHECK(v == 2.5);
    CHECK(c.total_mass() == 2.5);

    const auto s = make_grid(1, 2, "step:1,3");
    CHECK(std::vector<double>(s.cells().begin(), s.cells().end()) == std::vector<double>{1, 1, 3, 3});

    const auto s2 = make_grid(2, 1, "step:1,2,3,4");
    CHECK(s2.cell(3) == 4.0);

    // pow cells are exact cell averages of x^a.
    for (double a : {-0.75, -0.5, 0.5, 2.0}) {
        const int level = 6;
        const auto w = make_grid(1, level, "pow:" + format_double(a));
        const long double h = std::ldexp(1.0L, -level);
        for (std::size_t i = 0; i < w.size(); ++i) {
            const long double x0 = h * i, x1 = h * (i + 1);
            const long double avg = (std::pow(x1, a + 1.0L) - std::pow(x0, a + 1.0L)) / ((a + 1.0L) * h);
            CHECK(std::abs(w.cell(i) - avg) <= 1e-13L * avg);
        }
        // Integral over each dyadic cube matches the closed form.
        for (const auto& q : enumerate_cubes(w, CubeSelection::all()).cubes) {
            const long double side = std::ldexp(1.0L, -q.level);
            const long double x0 = side * q.coords[0], x1 = x0 + side;
            const long double exact = (std::pow(x1, a + 1.0L) - std::pow(x0, a + 1.0L)) / (a + 1.0L);
            CHECK(std::abs(integrate(w, q) - exact) <= 1e-13L * exact);
        }
    }

    const auto r1 = make_grid(2, 3, "rand:9:lognormal:0.5");
    const auto r2 = make_grid(2, 3, "rand:9:lognormal:0.5");
    CHECK(std::equal(r1.cells().begin(), r1.cells().end(), r2.cells().begin()));
    for (double v : r1.cells()) CHECK(v > 0.0);
}

TEST_CASE("generator errors are distinct") {
    CHECK(code_of([] { make_grid(1, 3, "pow:-1"); }) == ErrorCode::NotIntegrable);
    CHECK(code_of([] { make_grid(1, 3, "const:0"); }) == ErrorCode::NonPositiveValue);
    CHECK(code_of([] { make_grid(1, 3, "step:1,-2"); }) == ErrorCode::NonPositiveValue);
    CHECK(code_of([] { make_grid(1, 3, "banana"); }) == ErrorCode::InvalidSpec);
    CHECK(code_of([] { make_grid(1, 2, "step:1,2,3"); }) == ErrorCode::InvalidSpec);
    CHECK(code_of([] { make_grid(2, 3, "pow:0.5"); }) == ErrorCode::InvalidSpec);
    CHECK(code_of([] { make_grid(3, 3, "const:1"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("dyadic cubes and families") {
    const auto w1 = make_grid(1, 3, "const:1");
    CHECK(enumerate_cubes(w1, CubeSelection::all()).cubes.size() == 15);
    CHECK(enumerate_cubes(w1, CubeSelection::single_level(2)).cubes.size() == 4);
    const auto w2 = make_grid(2, 2, "const:1");
    CHECK(enumerate_cubes(w2, CubeSelection::all()).cubes.size() == 21);

    const auto q = DyadicCube::parse("2:1:3", 2);
    CHECK(q.level == 2);
    CHECK(q.coords[0] == 1);
    CHECK(q.coords[1] == 3);
    CHECK(q.to_string(2) == "2:1:3");
    CHECK(DyadicCube::base().contains(q));
    CHECK(DyadicCube::parse("1:0:1", 2).contains(q));
    CHECK_FALSE(DyadicCube::parse("1:1:1", 2).contains(q));
    CHECK(q.measure(2) == 1.0 / 16.0);

    CHECK(code_of([&] { w1.check_cube(DyadicCube::parse("4:0", 1)); }) == ErrorCode::CubeOutOfRange);
    CHECK(code_of([&] { w1.check_cube(DyadicCube::parse("1:2", 1)); }) == ErrorCode::CubeOutOfRange);
    CHECK(code_of([&] { enumerate_cubes(w1, CubeSelection::parse("list:1:0;1:0", 1)); }) ==
          ErrorCode::DuplicateCube);
    CHECK(enumerate_cubes(w1, CubeSelection::parse("level:1", 1)).cubes.size() == 2);
}

TEST_CASE("pyramid sums agree with brute force") {
    for (int d = 1; d <= 2; ++d) {
        const auto w = make_grid(d, d == 1 ? 9 : 5, "rand:3:lognormal:1");
        const SumPyramid pyr(w);
        for (const auto& q : enumerate_cubes(w, CubeSelection::all()).cubes) {
            const long double exact = brute_sum(w, q);
            CHECK(std::abs(pyr.sum(q) - exact) <= 1e-13L * exact);
            CHECK(integrate(w, q) == pyr.sum(q) * w.cell_measure());
        }
    }
    std::vector<double> v{1e16, 1.0, -1e16, 1.0};
    CHECK(pairwise_sum(v) == (1e16 + 1.0) + (-1e16 + 1.0));
}

TEST_CASE("coarsen and restrict preserve averages") {
    const auto w = make_grid(2, 4, "rand:11:lognormal:0.7");
    const auto c = coarsen(w, 2);
    CHECK(c.level() == 2);
    CHECK(std::abs(c.total_mass() - w.total_mass()) <= 1e-14 * w.total_mass());
    const auto q = DyadicCube::parse("1:1:0", 2);
    const auto r = restrict_to(w, q);
    CHECK(r.level() == 3);
    CHECK(std::abs(r.total_mass() - integrate(w, q) / q.measure(2)) <= 1e-14 * r.total_mass());
}

TEST_CASE("file round trips are bit exact") {
    const auto w = make_grid(2, 3, "rand:5:lognormal:1");
    for (const std::string ext : {".csv", ".json"}) {
        const auto path = tmp_path("roundtrip" + ext);
        save_weight(w, path);
        const auto back = load_weight(path);
        CHECK(back.dim() == 2);
        CHECK(back.level() == 3);
        CHECK(std::equal(w.cells().begin(), w.cells().end(), back.cells().begin()));
        CHECK(make_grid(2, 3, "file:" + path).size() == w.size());
    }
    const auto again = parse_csv(to_csv(w));
    CHECK(std::equal(w.cells().begin(), w.cells().end(), again.cells().begin()));
    CHECK(to_csv(w).rfind("# rhlab d=2 L=3\n", 0) == 0);
}

TEST_CASE("file errors are distinct") {
    CHECK(code_of([] { parse_csv("1\n2\n"); }) == ErrorCode::HeaderMismatch);
    CHECK(code_of([] { parse_csv("# rhlab d=1 L=1\n1\n"); }) == ErrorCode::CellCountMismatch);
    CHECK(code_of([] { parse_csv("# rhlab d=1 L=1\n1\n0\n"); }) == ErrorCode::NonPositiveCell);
    CHECK(code_of([] { parse_csv("# rhlab d=1 L=1\n1\nabc\n"); }) == ErrorCode::ParseFailure);
    CHECK(code_of([] { parse_json(R"({"d":1,"L":1,"cells":[1],"label":""})"); }) == ErrorCode::CellCountMismatch);
    CHECK(code_of([] { load_weight(tmp_path("does_not_exist.csv")); }) == ErrorCode::IoFailure);
    const auto path = tmp_path("small.csv");
    write_file(path, "# rhlab d=1 L=1\n1\n2\n");
    CHECK(code_of([&] { make_grid(1, 2, "file:" + path); }) == ErrorCode::HeaderMismatch);
}
