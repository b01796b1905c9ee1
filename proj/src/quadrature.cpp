#include "rhlab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace rhlab {

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double s = f(c - x) + f(c + x);
        kron += kWgk[j] * s;
        if (j % 2 == 1) gauss += kWg[j / 2] * s;
    }
    return {a, b, kron * h, std::abs((kron - gauss) * h)};
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double rel_tol, double abs_tol, int max_intervals) {
    QuadResult out;
    if (!(b > a)) return out;
    std::priority_queue<Segment> heap;
    heap.push(gk15(f, a, b));
    out.evaluations = 15;
    double value = heap.top().value;
    double error = heap.top().error;
    int intervals = 1;
    while (error > std::max(rel_tol * std::abs(value), abs_tol) && intervals < max_intervals) {
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            heap.push(worst);
            break;
        }
        const Segment left = gk15(f, worst.a, mid);
        const Segment right = gk15(f, mid, worst.b);
        out.evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++intervals;
    }
    // Re-sum to avoid drift from the incremental updates.
    std::vector<Segment> segs;
    while (!heap.empty()) {
        segs.push_back(heap.top());
        heap.pop();
    }
    std::sort(segs.begin(), segs.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
    value = 0.0;
    error = 0.0;
    for (const auto& s : segs) {
        value += s.value;
        error += s.error;
    }
    out.value = value;
    out.error = error;
    return out;
}

double power_integral(double e, double u0, double u1) {
    if (!(u1 > u0)) return 0.0;
    const double e1 = e + 1.0;
    if (u0 == 0.0) {
        if (e1 <= 0.0) return std::numeric_limits<double>::infinity();
        return std::pow(u1, e1) / e1;
    }
    const double lr = std::log(u1 / u0);
    if (e1 == 0.0) return lr;
    return std::pow(u0, e1) * std::expm1(e1 * lr) / e1;
}

double power_piece_integral(double a, double b, double q, double kappa, double u0, double u1,
                            double rel_tol) {
    if (!(u1 > u0)) return 0.0;
    if (a == 0.0) return std::pow(b, q) * power_integral(q - kappa - 1.0, u0, u1);
    if (b == 0.0) return std::pow(a, q) * power_integral(-kappa - 1.0, u0, u1);
    if (u0 == 0.0) {
        if (kappa >= 0.0) return std::numeric_limits<double>::infinity();
    }
    const double qr = std::round(q);
    if (q == qr && q >= 1.0 && q <= 8.0) {
        // Binomial expansion: all terms are nonnegative, no cancellation.
        const int n = static_cast<int>(qr);
        double sum = 0.0;
        double binom = 1.0;
        for (int k = 0; k <= n; ++k) {
            sum += binom * std::pow(a, k) * std::pow(b, n - k) *
                   power_integral(n - k - kappa - 1.0, u0, u1);
            binom = binom * (n - k) / (k + 1);
        }
        return sum;
    }
    if (u0 == 0.0) {
        // Here kappa < 0: integrand bounded near the origin.
        auto g = [&](double s) { return std::pow(a + b * s, q) * std::pow(s, -kappa - 1.0); };
        return integrate_adaptive(g, u0, u1, rel_tol).value;
    }
    // Substitute s = u0 * e^x so pieces spanning many decades stay well resolved.
    const double span = std::log(u1 / u0);
    auto g = [&](double x) {
        const double s = u0 * std::exp(x);
        return std::pow(a + b * s, q) * std::pow(s, -kappa);
    };
    return integrate_adaptive(g, 0.0, span, rel_tol).value;
}

}  // namespace rhlab
