#pragma once

#include <functional>
#include <vector>

#include "rhlab/rearrange.hpp"

namespace rhlab {

/// One linear piece phi(u) = v0 + b (u - u0) on [u0, u1).
struct Piece {
    double u0;
    double u1;
    double v0;
    double b;

    double at(double u) const { return v0 + b * (u - u0); }
    double end_value() const { return v0 + b * (u1 - u0); }
    // Value of the affine extension at u = 0.
    double intercept() const { return v0 - b * u0; }
};

/// Piecewise-linear function on (0, domain_end], possibly discontinuous at
/// piece boundaries (each piece owns its left end; the right end is a left
/// limit). Pieces are contiguous and start at u = 0.
class PiecewiseLinear {
public:
    PiecewiseLinear() = default;
    PiecewiseLinear(std::vector<Piece> pieces, double domain_end);

    // Continuous interpolant through (x_i, y_i); x must start at 0 and increase.
    static PiecewiseLinear through_points(const std::vector<double>& x, const std::vector<double>& y);
    // Samples fn at n geometrically spaced points on [lo, hi] plus the origin
    // (value origin_value there).
    static PiecewiseLinear sample(const std::function<double(double)>& fn, double lo, double hi,
                                  int n, double origin_value = 0.0);

    const std::vector<Piece>& pieces() const { return pieces_; }
    double domain_end() const { return domain_end_; }
    // phi(u) for u in [0, domain_end); the last value is held beyond.
    double value(double u) const;
    // Smallest positive breakpoint, the natural resolution of the curve.
    double first_breakpoint() const;

private:
    std::vector<Piece> pieces_;
    double domain_end_ = 0.0;
};

/// Nondecreasing concave piecewise-linear curve through the origin, constant
/// beyond domain_end. Invariants are checked on construction.
class ConcaveCurve {
public:
    ConcaveCurve(std::vector<double> knots, std::vector<double> values, std::vector<double> slopes);

    // K(t) = int_0^t f* for a decreasing step.
    static ConcaveCurve from_rearrangement(const DecreasingStep& r);

    double value(double t) const;
    double domain_end() const { return knots_.back(); }
    double final_value() const { return values_.back(); }
    const std::vector<double>& knots() const { return knots_; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& slopes() const { return slopes_; }

    PiecewiseLinear to_piecewise() const;

private:
    std::vector<double> knots_;   // 0 = t_0 < ... < t_n = domain_end
    std::vector<double> values_;  // K(t_i)
    std::vector<double> slopes_;  // slope on [t_i, t_{i+1}), n entries
};

}  // namespace rhlab
