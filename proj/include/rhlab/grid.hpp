#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rhlab/error.hpp"

namespace rhlab {

/// Address of a dyadic subcube of the base cube [0,1)^d.
///
/// For d = 2, coords[0] indexes rows and coords[1] columns; cells are stored
/// row-major, so cell (r, c) of a level-L grid lives at r * 2^L + c.
struct DyadicCube {
    int level = 0;
    std::array<std::int64_t, 2> coords{0, 0};

    static DyadicCube base() { return {}; }

    double measure(int dim) const;

    // "l:i" for d = 1, "l:i:j" for d = 2.
    std::string to_string(int dim) const;
    static DyadicCube parse(std::string_view text, int dim);

    bool contains(const DyadicCube& other) const;
    bool disjoint(const DyadicCube& other) const;

    friend bool operator==(const DyadicCube&, const DyadicCube&) = default;
    friend auto operator<=>(const DyadicCube&, const DyadicCube&) = default;
};

/// Piecewise-constant, strictly positive weight on the uniform dyadic grid of
/// level L over [0,1)^d. Immutable once constructed.
class WeightGrid {
public:
    WeightGrid(int dim, int level, std::vector<double> cells, std::string label = {});

    int dim() const { return dim_; }
    int level() const { return level_; }
    std::int64_t cells_per_axis() const { return std::int64_t{1} << level_; }
    std::size_t size() const { return cells_.size(); }
    double cell_measure() const;
    std::span<const double> cells() const { return cells_; }
    double cell(std::size_t i) const { return cells_[i]; }
    const std::string& label() const { return label_; }

    // Total mass, sum(cells) * 2^{-dL} with the fixed reduction tree.
    double total_mass() const;

    bool contains(const DyadicCube& q) const;
    void check_cube(const DyadicCube& q) const;  // throws CubeOutOfRange

    // Row-major indices of the cells covered by q.
    std::vector<std::size_t> cell_indices(const DyadicCube& q) const;
    // Cell values covered by q, in dyadic (tree) order.
    std::vector<double> values(const DyadicCube& q) const;

    // New grid with every cell replaced by fn(cell). fn must keep values positive.
    WeightGrid map(const std::function<double(double)>& fn, std::string label) const;
    WeightGrid scaled(double c) const;

private:
    int dim_;
    int level_;
    std::vector<double> cells_;
    std::string label_;
};

/// Level-by-level cell sums built with one fixed pairwise tree.
/// sums[l][k] is the sum of cell values inside the k-th cube of level l
/// (cube index in row-major order of that level).
class SumPyramid {
public:
    SumPyramid(int dim, int level, std::span<const double> cells);
    explicit SumPyramid(const WeightGrid& w) : SumPyramid(w.dim(), w.level(), w.cells()) {}

    int dim() const { return dim_; }
    int level() const { return level_; }
    double sum(const DyadicCube& q) const;
    double average(const DyadicCube& q) const;  // sum / cell count
    std::span<const double> level_sums(int l) const { return sums_[l]; }

    std::size_t index_of(const DyadicCube& q) const;

private:
    int dim_;
    int level_;
    std::vector<std::vector<double>> sums_;
};

enum class CubePolicy { AllDyadic, SingleLevel, Custom };

struct CubeSelection {
    CubePolicy policy = CubePolicy::AllDyadic;
    int level = 0;                  // SingleLevel
    std::vector<DyadicCube> cubes;  // Custom

    static CubeSelection all() { return {}; }
    static CubeSelection single_level(int l) { return {CubePolicy::SingleLevel, l, {}}; }
    static CubeSelection custom(std::vector<DyadicCube> list) {
        return {CubePolicy::Custom, 0, std::move(list)};
    }
    // "all", "level:<l>", or "list:<cube>;<cube>;..."
    static CubeSelection parse(std::string_view text, int dim);
};

struct CubeFamily {
    std::vector<DyadicCube> cubes;
    std::string policy_tag;  // reported as cube_policy
};

// --- Operations ------------------------------------------------------------

/// Build a weight from a generator descriptor:
///   const:c | pow:a (d = 1) | step:v0,v1,... | rand:seed:lognormal:sigma | file:path
WeightGrid make_grid(int dim, int level, std::string_view spec);

/// Exact-cell-average power weight x^a on [0,1) (d = 1, a > -1).
WeightGrid power_weight(int level, double a);

/// Mass of w over q, summed with the fixed pairwise tree.
double integrate(const WeightGrid& w, const DyadicCube& q);

CubeFamily enumerate_cubes(const WeightGrid& grid, const CubeSelection& selection);

enum class WeightFormat { Csv, Json };
WeightFormat format_from_path(std::string_view path);

WeightGrid load_weight(const std::string& path, WeightFormat format);
WeightGrid load_weight(const std::string& path);
void save_weight(const WeightGrid& grid, const std::string& path, WeightFormat format);
void save_weight(const WeightGrid& grid, const std::string& path);

std::string to_csv(const WeightGrid& grid);
std::string to_json(const WeightGrid& grid);
WeightGrid parse_csv(std::string_view text, std::string label = {});
WeightGrid parse_json(std::string_view text);

/// The restriction of w to q, rescaled to the base cube (level L - l).
/// Averages are preserved; masses scale by 1/|q|.
WeightGrid restrict_to(const WeightGrid& w, const DyadicCube& q);

/// Block averages over cubes of level L - levels (exact for cell averages).
WeightGrid coarsen(const WeightGrid& w, int levels);

// Shortest round-trip decimal for a double.
std::string format_double(double v);

}  // namespace rhlab
