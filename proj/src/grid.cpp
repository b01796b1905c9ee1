#include "rhlab/grid.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "rhlab/reduce.hpp"
#include "rhlab/rng.hpp"

namespace rhlab {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::InvalidSpec: return "malformed spec";
    case ErrorCode::NonPositiveValue: return "nonpositive value";
    case ErrorCode::NotIntegrable: return "not locally integrable";
    case ErrorCode::CubeOutOfRange: return "cube outside grid";
    case ErrorCode::OverlappingCubes: return "overlapping cubes";
    case ErrorCode::DuplicateCube: return "duplicate cube";
    case ErrorCode::HeaderMismatch: return "header mismatch";
    case ErrorCode::CellCountMismatch: return "cell count mismatch";
    case ErrorCode::NonPositiveCell: return "nonpositive cell";
    case ErrorCode::ParseFailure: return "parse failure";
    case ErrorCode::IoFailure: return "io failure";
    case ErrorCode::DivergentIntegral: return "divergent integral";
    case ErrorCode::Precondition: return "precondition failed";
    }
    return "unknown";
}

double pairwise_sum(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n == 0) return 0.0;
    if (n == 1) return values[0];
    if (n == 2) return values[0] + values[1];
    std::size_t half = 1;
    while (half * 2 < n) half *= 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double CounterRng::normal(std::uint64_t i) const {
    const double u1 = uniform(2 * i);
    const double u2 = uniform(2 * i + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& msg) {
    throw Error(code, std::string(to_string(code)) + ": " + msg);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        out.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::optional<double> parse_number(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
    s = trim(s);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

double spec_number(std::string_view s, std::string_view spec) {
    auto v = parse_number(s);
    if (!v || !std::isfinite(*v)) fail(ErrorCode::InvalidSpec, std::string(spec));
    return *v;
}

void check_shape(int dim, int level) {
    if (dim != 1 && dim != 2) fail(ErrorCode::InvalidArgument, "dimension must be 1 or 2");
    if (level < 0 || level > (dim == 1 ? 26 : 13))
        fail(ErrorCode::InvalidArgument, "level out of range");
}

// Z-order traversal of the cells of a cube, appending row-major indices.
void collect_z(int dim, std::int64_t n, std::int64_t r0, std::int64_t c0, std::int64_t side,
               std::vector<std::size_t>& out) {
    if (dim == 1) {
        for (std::int64_t i = 0; i < side; ++i) out.push_back(static_cast<std::size_t>(c0 + i));
        return;
    }
    if (side == 1) {
        out.push_back(static_cast<std::size_t>(r0 * n + c0));
        return;
    }
    const auto h = side / 2;
    collect_z(dim, n, r0, c0, h, out);
    collect_z(dim, n, r0, c0 + h, h, out);
    collect_z(dim, n, r0 + h, c0, h, out);
    collect_z(dim, n, r0 + h, c0 + h, h, out);
}

}  // namespace

// --- DyadicCube -------------------------------------------------------------

double DyadicCube::measure(int dim) const { return std::ldexp(1.0, -dim * level); }

std::string DyadicCube::to_string(int dim) const {
    std::string s = std::to_string(level) + ":" + std::to_string(coords[0]);
    if (dim == 2) s += ":" + std::to_string(coords[1]);
    return s;
}

DyadicCube DyadicCube::parse(std::string_view text, int dim) {
    const auto parts = split(trim(text), ':');
    if (static_cast<int>(parts.size()) != dim + 1)
        fail(ErrorCode::CubeOutOfRange, "cube address '" + std::string(text) + "'");
    DyadicCube q;
    auto l = parse_int(parts[0]);
    if (!l) fail(ErrorCode::CubeOutOfRange, "cube address '" + std::string(text) + "'");
    q.level = static_cast<int>(*l);
    for (int k = 0; k < dim; ++k) {
        auto c = parse_int(parts[k + 1]);
        if (!c) fail(ErrorCode::CubeOutOfRange, "cube address '" + std::string(text) + "'");
        q.coords[k] = *c;
    }
    return q;
}

bool DyadicCube::contains(const DyadicCube& o) const {
    if (o.level < level) return false;
    const int shift = o.level - level;
    return (o.coords[0] >> shift) == coords[0] && (o.coords[1] >> shift) == coords[1];
}

bool DyadicCube::disjoint(const DyadicCube& o) const { return !contains(o) && !o.contains(*this); }

// --- WeightGrid ------------------------------------------------------------

WeightGrid::WeightGrid(int dim, int level, std::vector<double> cells, std::string label)
    : dim_(dim), level_(level), cells_(std::move(cells)), label_(std::move(label)) {
    check_shape(dim, level);
    const std::size_t expected = std::size_t{1} << (dim * level);
    if (cells_.size() != expected)
        fail(ErrorCode::CellCountMismatch, "expected " + std::to_string(expected) + " cells, got " +
                                               std::to_string(cells_.size()));
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        if (!(cells_[i] > 0.0) || !std::isfinite(cells_[i]))
            fail(ErrorCode::NonPositiveCell, "cell " + std::to_string(i));
    }
    if (!std::isfinite(total_mass())) fail(ErrorCode::InvalidArgument, "total mass is not finite");
}

double WeightGrid::cell_measure() const { return std::ldexp(1.0, -dim_ * level_); }

double WeightGrid::total_mass() const { return pairwise_sum(cells_) * cell_measure(); }

bool WeightGrid::contains(const DyadicCube& q) const {
    if (q.level < 0 || q.level > level_) return false;
    const std::int64_t n = std::int64_t{1} << q.level;
    for (int k = 0; k < 2; ++k) {
        if (k >= dim_) {
            if (q.coords[k] != 0) return false;
            continue;
        }
        if (q.coords[k] < 0 || q.coords[k] >= n) return false;
    }
    return true;
}

void WeightGrid::check_cube(const DyadicCube& q) const {
    if (!contains(q)) fail(ErrorCode::CubeOutOfRange, q.to_string(dim_));
}

std::vector<std::size_t> WeightGrid::cell_indices(const DyadicCube& q) const {
    check_cube(q);
    const std::int64_t side = std::int64_t{1} << (level_ - q.level);
    std::vector<std::size_t> out;
    out.reserve(static_cast<std::size_t>(dim_ == 1 ? side : side * side));
    if (dim_ == 1) {
        for (std::int64_t i = 0; i < side; ++i)
            out.push_back(static_cast<std::size_t>(q.coords[0] * side + i));
    } else {
        const auto n = cells_per_axis();
        for (std::int64_t r = 0; r < side; ++r)
            for (std::int64_t c = 0; c < side; ++c)
                out.push_back(static_cast<std::size_t>((q.coords[0] * side + r) * n +
                                                       q.coords[1] * side + c));
    }
    return out;
}

std::vector<double> WeightGrid::values(const DyadicCube& q) const {
    check_cube(q);
    const std::int64_t side = std::int64_t{1} << (level_ - q.level);
    std::vector<std::size_t> idx;
    collect_z(dim_, cells_per_axis(), q.coords[0] * side, dim_ == 1 ? q.coords[0] * side : q.coords[1] * side,
              side, idx);
    std::vector<double> out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(cells_[i]);
    return out;
}

WeightGrid WeightGrid::map(const std::function<double(double)>& fn, std::string label) const {
    std::vector<double> out(cells_.size());
    std::transform(cells_.begin(), cells_.end(), out.begin(), fn);
    return WeightGrid(dim_, level_, std::move(out), std::move(label));
}

WeightGrid WeightGrid::scaled(double c) const {
    return map([c](double v) { return c * v; }, label_ + "*" + format_double(c));
}

// --- SumPyramid -------------------------------------------------------------

SumPyramid::SumPyramid(int dim, int level, std::span<const double> cells)
    : dim_(dim), level_(level), sums_(static_cast<std::size_t>(level) + 1) {
    sums_[level].assign(cells.begin(), cells.end());
    for (int l = level - 1; l >= 0; --l) {
        const auto& child = sums_[l + 1];
        auto& cur = sums_[l];
        const std::int64_t n = std::int64_t{1} << l;
        if (dim == 1) {
            cur.resize(static_cast<std::size_t>(n));
            for (std::int64_t i = 0; i < n; ++i) cur[i] = child[2 * i] + child[2 * i + 1];
        } else {
            const std::int64_t cn = 2 * n;
            cur.resize(static_cast<std::size_t>(n * n));
            for (std::int64_t r = 0; r < n; ++r)
                for (std::int64_t c = 0; c < n; ++c) {
                    const double top = child[(2 * r) * cn + 2 * c] + child[(2 * r) * cn + 2 * c + 1];
                    const double bottom =
                        child[(2 * r + 1) * cn + 2 * c] + child[(2 * r + 1) * cn + 2 * c + 1];
                    cur[r * n + c] = top + bottom;
                }
        }
    }
}

std::size_t SumPyramid::index_of(const DyadicCube& q) const {
    if (dim_ == 1) return static_cast<std::size_t>(q.coords[0]);
    return static_cast<std::size_t>(q.coords[0] * (std::int64_t{1} << q.level) + q.coords[1]);
}

double SumPyramid::sum(const DyadicCube& q) const { return sums_[q.level][index_of(q)]; }

double SumPyramid::average(const DyadicCube& q) const {
    return std::ldexp(sum(q), -dim_ * (level_ - q.level));
}

// --- CubeSelection ----------------------------------------------------------

CubeSelection CubeSelection::parse(std::string_view text, int dim) {
    text = trim(text);
    if (text == "all" || text == "all-dyadic") return all();
    if (text.starts_with("level:")) {
        auto l = parse_int(text.substr(6));
        if (!l) fail(ErrorCode::InvalidSpec, "cube policy '" + std::string(text) + "'");
        return single_level(static_cast<int>(*l));
    }
    if (text.starts_with("list:")) {
        std::vector<DyadicCube> cubes;
        for (auto part : split(text.substr(5), ';'))
            if (!trim(part).empty()) cubes.push_back(DyadicCube::parse(part, dim));
        return custom(std::move(cubes));
    }
    fail(ErrorCode::InvalidSpec, "cube policy '" + std::string(text) + "'");
}

CubeFamily enumerate_cubes(const WeightGrid& grid, const CubeSelection& sel) {
    CubeFamily fam;
    const int d = grid.dim();
    auto add_level = [&](int l) {
        const std::int64_t n = std::int64_t{1} << l;
        if (d == 1) {
            for (std::int64_t i = 0; i < n; ++i) fam.cubes.push_back({l, {i, 0}});
        } else {
            for (std::int64_t r = 0; r < n; ++r)
                for (std::int64_t c = 0; c < n; ++c) fam.cubes.push_back({l, {r, c}});
        }
    };
    switch (sel.policy) {
    case CubePolicy::AllDyadic:
        for (int l = 0; l <= grid.level(); ++l) add_level(l);
        fam.policy_tag = "all-dyadic";
        break;
    case CubePolicy::SingleLevel:
        if (sel.level < 0 || sel.level > grid.level())
            fail(ErrorCode::CubeOutOfRange, "level " + std::to_string(sel.level));
        add_level(sel.level);
        fam.policy_tag = "single-level:" + std::to_string(sel.level);
        break;
    case CubePolicy::Custom: {
        std::set<DyadicCube> seen;
        for (const auto& q : sel.cubes) {
            grid.check_cube(q);
            if (!seen.insert(q).second) fail(ErrorCode::DuplicateCube, q.to_string(d));
        }
        fam.cubes.assign(seen.begin(), seen.end());
        fam.policy_tag = "custom";
        break;
    }
    }
    return fam;
}

// --- generators -------------------------------------------------------------

WeightGrid power_weight(int level, double a) {
    check_shape(1, level);
    if (!(a > -1.0)) fail(ErrorCode::NotIntegrable, "pow exponent must exceed -1");
    const double e = a + 1.0;
    const std::size_t n = std::size_t{1} << level;
    // Cell k holds 2^L * ((k+1)^e - k^e) * 2^{-L e} / e, the exact average of x^a.
    const double scale = std::exp2(-static_cast<double>(level) * a) / e;
    std::vector<double> cells(n);
    for (std::size_t k = 0; k < n; ++k) {
        double diff;
        if (k == 0) {
            diff = 1.0;
        } else {
            const double kd = static_cast<double>(k);
            diff = std::pow(kd, e) * std::expm1(e * std::log1p(1.0 / kd));
        }
        cells[k] = diff * scale;
    }
    return WeightGrid(1, level, std::move(cells), "pow:" + format_double(a));
}

WeightGrid make_grid(int dim, int level, std::string_view spec) {
    check_shape(dim, level);
    const std::string label(spec);
    const std::size_t n = std::size_t{1} << (dim * level);
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) fail(ErrorCode::InvalidSpec, label);
    const auto kind = spec.substr(0, colon);
    const auto rest = spec.substr(colon + 1);

    if (kind == "const") {
        const double c = spec_number(rest, spec);
        if (!(c > 0)) fail(ErrorCode::NonPositiveValue, label);
        return WeightGrid(dim, level, std::vector<double>(n, c), label);
    }
    if (kind == "pow") {
        if (dim != 1) fail(ErrorCode::InvalidSpec, "pow generator requires d = 1");
        const double a = spec_number(rest, spec);
        auto w = power_weight(level, a);
        return WeightGrid(1, level, std::vector<double>(w.cells().begin(), w.cells().end()), label);
    }
    if (kind == "step") {
        std::vector<double> vals;
        for (auto part : split(rest, ',')) {
            const double v = spec_number(part, spec);
            if (!(v > 0)) fail(ErrorCode::NonPositiveValue, label);
            vals.push_back(v);
        }
        if (vals.empty() || n % vals.size() != 0)
            fail(ErrorCode::InvalidSpec, label + " (value count must divide the cell count)");
        const std::size_t block = n / vals.size();
        std::vector<double> cells(n);
        for (std::size_t i = 0; i < n; ++i) cells[i] = vals[i / block];
        return WeightGrid(dim, level, std::move(cells), label);
    }
    if (kind == "rand") {
        const auto parts = split(rest, ':');
        if (parts.size() != 3 || parts[1] != "lognormal") fail(ErrorCode::InvalidSpec, label);
        std::uint64_t seed = 0;
        {
            auto s = trim(parts[0]);
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
            if (ec != std::errc{} || ptr != s.data() + s.size()) fail(ErrorCode::InvalidSpec, label);
        }
        const double sigma = spec_number(parts[2], spec);
        if (!(sigma >= 0)) fail(ErrorCode::InvalidSpec, label);
        const CounterRng rng(seed);
        std::vector<double> cells(n);
        for (std::size_t i = 0; i < n; ++i) cells[i] = std::exp(sigma * rng.normal(i));
        return WeightGrid(dim, level, std::move(cells), label);
    }
    if (kind == "file") {
        auto w = load_weight(std::string(rest));
        if (w.dim() != dim || w.level() != level)
            fail(ErrorCode::HeaderMismatch, "file has d=" + std::to_string(w.dim()) +
                                                " L=" + std::to_string(w.level()));
        return w;
    }
    fail(ErrorCode::InvalidSpec, label);
}

double integrate(const WeightGrid& w, const DyadicCube& q) {
    const auto vals = w.values(q);
    return pairwise_sum(vals) * w.cell_measure();
}

WeightGrid restrict_to(const WeightGrid& w, const DyadicCube& q) {
    const auto idx = w.cell_indices(q);
    std::vector<double> cells;
    cells.reserve(idx.size());
    for (auto i : idx) cells.push_back(w.cell(i));
    return WeightGrid(w.dim(), w.level() - q.level, std::move(cells),
                      w.label() + "@" + q.to_string(w.dim()));
}

WeightGrid coarsen(const WeightGrid& w, int levels) {
    if (levels < 0 || levels > w.level()) fail(ErrorCode::InvalidArgument, "coarsen levels");
    if (levels == 0) return w;
    const SumPyramid pyr(w);
    const int l = w.level() - levels;
    const auto sums = pyr.level_sums(l);
    std::vector<double> cells(sums.size());
    for (std::size_t i = 0; i < sums.size(); ++i) cells[i] = std::ldexp(sums[i], -w.dim() * levels);
    return WeightGrid(w.dim(), l, std::move(cells), w.label());
}

// --- I/O --------------------------------------------------------------------

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

WeightFormat format_from_path(std::string_view path) {
    if (path.ends_with(".json")) return WeightFormat::Json;
    return WeightFormat::Csv;
}

std::string to_csv(const WeightGrid& grid) {
    std::string out = "# rhlab d=" + std::to_string(grid.dim()) + " L=" + std::to_string(grid.level()) + "\n";
    for (double v : grid.cells()) {
        out += format_double(v);
        out += '\n';
    }
    return out;
}

std::string to_json(const WeightGrid& grid) {
    nlohmann::ordered_json j;
    j["d"] = grid.dim();
    j["L"] = grid.level();
    j["cells"] = std::vector<double>(grid.cells().begin(), grid.cells().end());
    j["label"] = grid.label();
    return j.dump() + "\n";
}

WeightGrid parse_csv(std::string_view text, std::string label) {
    std::size_t pos = text.find('\n');
    const auto header = trim(text.substr(0, pos));
    int d = 0, L = 0;
    {
        constexpr std::string_view prefix = "# rhlab d=";
        if (!header.starts_with(prefix)) fail(ErrorCode::HeaderMismatch, "missing '# rhlab d=<d> L=<L>' header");
        const auto rest = header.substr(prefix.size());
        const auto sp = rest.find(" L=");
        if (sp == std::string_view::npos) fail(ErrorCode::HeaderMismatch, std::string(header));
        auto dv = parse_int(rest.substr(0, sp));
        auto lv = parse_int(rest.substr(sp + 3));
        if (!dv || !lv || (*dv != 1 && *dv != 2) || *lv < 0 || *lv > (*dv == 1 ? 26 : 13))
            fail(ErrorCode::HeaderMismatch, std::string(header));
        d = static_cast<int>(*dv);
        L = static_cast<int>(*lv);
    }
    std::vector<double> cells;
    std::size_t line_no = 1;
    while (pos != std::string_view::npos) {
        const std::size_t start = pos + 1;
        pos = text.find('\n', start);
        const auto line = trim(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
        ++line_no;
        if (line.empty()) continue;
        auto v = parse_number(line);
        if (!v || !std::isfinite(*v)) fail(ErrorCode::ParseFailure, "line " + std::to_string(line_no));
        cells.push_back(*v);
    }
    const std::size_t expected = std::size_t{1} << (d * L);
    if (cells.size() != expected)
        fail(ErrorCode::CellCountMismatch, "header says " + std::to_string(expected) + " cells, found " +
                                               std::to_string(cells.size()));
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (!(cells[i] > 0)) fail(ErrorCode::NonPositiveCell, "cell " + std::to_string(i));
    return WeightGrid(d, L, std::move(cells), std::move(label));
}

WeightGrid parse_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseFailure, e.what());
    }
    if (!j.is_object() || !j.contains("d") || !j.contains("L") || !j.contains("cells") ||
        !j["d"].is_number_integer() || !j["L"].is_number_integer() || !j["cells"].is_array())
        fail(ErrorCode::HeaderMismatch, "expected {\"d\",\"L\",\"cells\",\"label\"}");
    const int d = j["d"].get<int>();
    const int L = j["L"].get<int>();
    if ((d != 1 && d != 2) || L < 0 || L > (d == 1 ? 26 : 13)) fail(ErrorCode::HeaderMismatch, "bad d or L");
    std::vector<double> cells;
    cells.reserve(j["cells"].size());
    for (const auto& c : j["cells"]) {
        if (!c.is_number()) fail(ErrorCode::ParseFailure, "non-numeric cell");
        cells.push_back(c.get<double>());
    }
    const std::size_t expected = std::size_t{1} << (d * L);
    if (cells.size() != expected)
        fail(ErrorCode::CellCountMismatch, "header says " + std::to_string(expected) + " cells, found " +
                                               std::to_string(cells.size()));
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (!(cells[i] > 0)) fail(ErrorCode::NonPositiveCell, "cell " + std::to_string(i));
    std::string label = j.contains("label") && j["label"].is_string() ? j["label"].get<std::string>() : "";
    return WeightGrid(d, L, std::move(cells), std::move(label));
}

WeightGrid load_weight(const std::string& path, WeightFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoFailure, "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    if (format == WeightFormat::Json) return parse_json(text);
    return parse_csv(text, "file:" + path);
}

WeightGrid load_weight(const std::string& path) { return load_weight(path, format_from_path(path)); }

void save_weight(const WeightGrid& grid, const std::string& path, WeightFormat format) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::IoFailure, "cannot write '" + path + "'");
    out << (format == WeightFormat::Json ? to_json(grid) : to_csv(grid));
    if (!out) fail(ErrorCode::IoFailure, "write failed for '" + path + "'");
}

void save_weight(const WeightGrid& grid, const std::string& path) {
    save_weight(grid, path, format_from_path(path));
}

}  // namespace rhlab
