#include "rhlab/curve.hpp"

#include <algorithm>
#include <cmath>

namespace rhlab {

PiecewiseLinear::PiecewiseLinear(std::vector<Piece> pieces, double domain_end)
    : pieces_(std::move(pieces)), domain_end_(domain_end) {
    if (pieces_.empty() || pieces_.front().u0 != 0.0)
        throw Error(ErrorCode::InvalidArgument, "piecewise curve must start at 0");
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (!(pieces_[i].u1 > pieces_[i].u0))
            throw Error(ErrorCode::InvalidArgument, "piecewise curve has an empty piece");
        if (i > 0 && pieces_[i].u0 != pieces_[i - 1].u1)
            throw Error(ErrorCode::InvalidArgument, "piecewise curve pieces are not contiguous");
    }
    if (pieces_.back().u1 != domain_end_)
        throw Error(ErrorCode::InvalidArgument, "last piece must end at domain_end");
}

PiecewiseLinear PiecewiseLinear::through_points(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw Error(ErrorCode::InvalidArgument, "need at least two points");
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        pieces.push_back({x[i], x[i + 1], y[i], (y[i + 1] - y[i]) / (x[i + 1] - x[i])});
    return PiecewiseLinear(std::move(pieces), x.back());
}

PiecewiseLinear PiecewiseLinear::sample(const std::function<double(double)>& fn, double lo, double hi,
                                        int n, double origin_value) {
    if (!(lo > 0.0 && hi > lo && n >= 2))
        throw Error(ErrorCode::InvalidArgument, "bad sampling range");
    std::vector<double> x{0.0}, y{origin_value};
    const double ratio = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double u = i == n - 1 ? hi : lo * std::exp(ratio * i);
        x.push_back(u);
        y.push_back(fn(u));
    }
    return through_points(x, y);
}

double PiecewiseLinear::value(double u) const {
    if (u >= domain_end_) return pieces_.back().end_value();
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), u,
                               [](double x, const Piece& p) { return x < p.u1; });
    if (it == pieces_.end()) --it;
    return it->at(u);
}

double PiecewiseLinear::first_breakpoint() const { return pieces_.front().u1; }

ConcaveCurve::ConcaveCurve(std::vector<double> knots, std::vector<double> values, std::vector<double> slopes)
    : knots_(std::move(knots)), values_(std::move(values)), slopes_(std::move(slopes)) {
    const std::size_t n = slopes_.size();
    if (n == 0 || knots_.size() != n + 1 || values_.size() != n + 1)
        throw Error(ErrorCode::InvalidArgument, "concave curve: inconsistent sizes");
    if (knots_[0] != 0.0 || values_[0] != 0.0)
        throw Error(ErrorCode::InvalidArgument, "concave curve must pass through the origin");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(knots_[i + 1] > knots_[i]))
            throw Error(ErrorCode::InvalidArgument, "concave curve: knots must increase");
        if (slopes_[i] < 0.0) throw Error(ErrorCode::InvalidArgument, "concave curve: decreasing");
        if (i > 0 && slopes_[i] > slopes_[i - 1])
            throw Error(ErrorCode::InvalidArgument, "concave curve: slopes must not increase");
    }
}

ConcaveCurve ConcaveCurve::from_rearrangement(const DecreasingStep& r) {
    std::vector<double> knots{0.0}, values{0.0}, slopes;
    double t = 0.0, v = 0.0;
    for (const auto& p : r.plateaus) {
        t += p.measure;
        v += p.value * p.measure;
        knots.push_back(t);
        values.push_back(v);
        slopes.push_back(p.value);
    }
    return ConcaveCurve(std::move(knots), std::move(values), std::move(slopes));
}

double ConcaveCurve::value(double t) const {
    if (t <= 0.0) return 0.0;
    if (t >= knots_.back()) return values_.back();
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
    return values_[i] + slopes_[i] * (t - knots_[i]);
}

PiecewiseLinear ConcaveCurve::to_piecewise() const {
    std::vector<Piece> pieces;
    pieces.reserve(slopes_.size());
    for (std::size_t i = 0; i < slopes_.size(); ++i)
        pieces.push_back({knots_[i], knots_[i + 1], values_[i], slopes_[i]});
    return PiecewiseLinear(std::move(pieces), knots_.back());
}

}  // namespace rhlab
