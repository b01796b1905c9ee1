#include "rhlab/indices.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>

#include "rhlab/kcalc.hpp"
#include "rhlab/parallel.hpp"
#include "rhlab/rearrange.hpp"

namespace rhlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// A piece clipped to the evaluation window, with endpoint logs cached.
struct Prepared {
    double u0, u1;
    double lu0, lu1;
    double lphi0, lphi1;
    double a, b;
    bool origin;  // u0 == 0: the left end is a limit
};

using PreparedCurve = std::vector<Prepared>;

PreparedCurve prepare(const PiecewiseLinear& phi, double lo, double hi) {
    PreparedCurve out;
    for (const auto& p : phi.pieces()) {
        if (p.u1 <= lo || p.u0 >= hi) continue;
        Prepared c;
        c.u0 = std::max(p.u0, lo);
        c.u1 = std::min(p.u1, hi);
        c.b = p.b;
        c.a = p.intercept();
        c.origin = c.u0 == 0.0;
        if (c.origin) c.a = p.v0;  // the affine part is exactly v0 + b u
        const double f0 = p.at(c.u0);
        const double f1 = p.at(c.u1);
        c.lu0 = c.origin ? -kInf : std::log(c.u0);
        c.lu1 = std::log(c.u1);
        c.lphi0 = f0 > 0.0 ? std::log(f0) : -kInf;
        c.lphi1 = f1 > 0.0 ? std::log(f1) : -kInf;
        out.push_back(c);
    }
    return out;
}

struct LogRatio {
    double value = 0.0;  // log of the a.i. constant
    double s = 0.0;
    double t = 0.0;
};

// Sweep candidates in increasing u, tracking the running max of log g.
LogRatio evaluate(const PreparedCurve& curve, double kappa, double q, double log_cap) {
    LogRatio best;
    double run = -kInf;
    double run_at = 0.0;
    bool started = false;
    auto visit = [&](double lg, double u) {
        if (!started) {
            best.s = best.t = u;
            started = true;
        }
        if (lg > run) {
            run = lg;
            run_at = u;
        }
        if (lg == -kInf) return;
        const double r = run - lg;
        if (r > best.value) {
            best.value = r;
            best.s = run_at;
            best.t = u;
        }
    };
    for (const auto& c : curve) {
        // Left end.
        if (c.origin) {
            double lg;
            if (c.a > 0.0) {
                lg = kappa > 0.0 ? kInf : q * std::log(c.a);
            } else if (kappa > q) {
                lg = kInf;
            } else if (kappa == q) {
                lg = q * std::log(c.b);
            } else {
                lg = -kInf;
            }
            if (lg == kInf) {
                best.value = kInf;
                best.s = 0.0;
                best.t = c.u1;
                return best;
            }
            visit(lg, 0.0);
        } else {
            visit(q * c.lphi0 - kappa * c.lu0, c.u0);
        }
        // Interior critical point of q log(a + b u) - kappa log u.
        if (c.a != 0.0 && c.b != 0.0 && q != kappa) {
            const double u = kappa * c.a / (c.b * (q - kappa));
            if (u > c.u0 && u < c.u1) {
                const double f = c.a + c.b * u;
                if (f > 0.0) visit(q * std::log(f) - kappa * std::log(u), u);
            }
        }
        // Right end (left limit).
        visit(q * c.lphi1 - kappa * c.lu1, c.u1);
        if (best.value > log_cap) return best;
    }
    return best;
}

struct FamilyResult {
    double log_value = 0.0;
    std::size_t curve = 0;
    double s = 0.0;
    double t = 0.0;
};

// sup over curves; with full = false, stops as soon as the cap is exceeded
// (the pass/fail answer is still exact and schedule independent).
FamilyResult evaluate_family(const std::vector<PreparedCurve>& curves, double kappa, double q,
                             double log_cap, bool full) {
    std::vector<LogRatio> results(curves.size());
    std::atomic<bool> exceeded{false};
    const double stop = full ? kInf : log_cap;
    parallel_for(curves.size(), [&](std::size_t i) {
        if (!full && exceeded.load(std::memory_order_relaxed)) return;
        results[i] = evaluate(curves[i], kappa, q, stop);
        if (results[i].value > log_cap) exceeded.store(true, std::memory_order_relaxed);
    });
    FamilyResult out;
    bool first = true;
    for (std::size_t i = 0; i < curves.size(); ++i) {
        if (curves[i].empty()) continue;
        if (first || results[i].value > out.log_value) {
            out = {results[i].value, i, results[i].s, results[i].t};
            first = false;
        }
    }
    if (!full && exceeded.load()) out.log_value = std::max(out.log_value, std::nextafter(log_cap, kInf));
    return out;
}

struct SearchResult {
    double delta = 0.0;
    FamilyResult at_delta;
    FamilyResult above;
    double above_delta = 0.0;
    bool monotone = true;
};

SearchResult search(const std::vector<PreparedCurve>& curves, double beta, double q, double cap,
                    double tol) {
    const double log_cap = std::log(cap);
    auto ok = [&](double delta) {
        return evaluate_family(curves, beta * q + delta, q, log_cap, false).log_value <= log_cap;
    };
    SearchResult out;
    double lo = 0.0;
    double hi = 2.0 * q + 2.0;
    if (!ok(lo)) {
        hi = 0.0;
    } else {
        while (ok(hi) && hi < 1e4) {
            lo = hi;
            hi *= 2.0;
        }
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            if (ok(mid))
                lo = mid;
            else
                hi = mid;
        }
    }
    out.delta = lo;
    out.above_delta = hi;
    const auto at0 = evaluate_family(curves, beta * q, q, log_cap, true);
    out.at_delta = evaluate_family(curves, beta * q + lo, q, log_cap, true);
    out.above = evaluate_family(curves, beta * q + hi, q, log_cap, true);
    out.monotone = at0.log_value <= out.at_delta.log_value && out.at_delta.log_value <= out.above.log_value;
    return out;
}

std::vector<PreparedCurve> prepare_family(const CurveFamily& fam, double gamma, double floor) {
    std::vector<PreparedCurve> out(fam.curves.size());
    parallel_for(fam.curves.size(), [&](std::size_t i) {
        const double hi = gamma * fam.curves[i].domain_end();
        if (hi > floor) out[i] = prepare(fam.curves[i], floor, hi);
    });
    return out;
}

// Least-squares intercept of delta_j against 1 / lambda_j.
std::optional<double> extrapolate(const std::vector<FloorEstimate>& pts) {
    std::vector<std::pair<double, double>> xy;
    for (const auto& p : pts)
        if (p.lambda > 0.0 && std::isfinite(p.lambda)) xy.emplace_back(1.0 / p.lambda, p.delta);
    if (xy.size() < 2) return std::nullopt;
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : xy) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(xy.size());
    my /= static_cast<double>(xy.size());
    double sxx = 0.0, sxy = 0.0, xmax = 0.0;
    for (const auto& [x, y] : xy) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        xmax = std::max(xmax, std::abs(x));
    }
    if (sxx <= 1e-18 * xmax * xmax * static_cast<double>(xy.size())) return my;
    return my - (sxy / sxx) * mx;
}

void check_options(const IndexOptions& o) {
    if (!(o.cap > 1.0)) throw Error(ErrorCode::InvalidArgument, "cap must exceed 1");
    if (!(o.beta >= 0.0 && o.beta < 1.0)) throw Error(ErrorCode::InvalidArgument, "beta must lie in [0,1)");
    if (!(o.q >= 1.0)) throw Error(ErrorCode::InvalidArgument, "q must be >= 1");
    if (o.gamma_grid.empty()) throw Error(ErrorCode::InvalidArgument, "empty gamma grid");
    for (double g : o.gamma_grid)
        if (!(g > 0.0 && g <= 1.0)) throw Error(ErrorCode::InvalidArgument, "gamma must lie in (0,1]");
}

}  // namespace

AiResult ai_constant(const PiecewiseLinear& phi, double delta, double gamma, double beta, double q,
                     double floor) {
    const double hi = gamma * phi.domain_end();
    if (!(gamma > 0.0) || !(hi > floor))
        throw Error(ErrorCode::InvalidArgument, "ai_constant: empty domain");
    const auto r = evaluate(prepare(phi, floor, hi), beta * q + delta, q, kInf);
    return {std::exp(r.value), r.s, r.t};
}

CurveFamily k_family(const WeightGrid& w, const CubeFamily& cubes) {
    CurveFamily fam;
    fam.kind = "k";
    fam.dim = w.dim();
    fam.level = w.level();
    fam.resolution = w.cell_measure();
    fam.cubes = cubes.cubes;
    fam.curves.resize(cubes.cubes.size());
    parallel_for(cubes.cubes.size(), [&](std::size_t i) {
        fam.curves[i] = k_l1_linf(w, cubes.cubes[i]).to_piecewise();
    });
    return fam;
}

CurveFamily acks_family(const WeightGrid& w, const CubeFamily& cubes) {
    CurveFamily fam;
    fam.kind = "acks";
    fam.dim = w.dim();
    fam.level = w.level();
    fam.resolution = w.cell_measure();
    fam.cubes = cubes.cubes;
    fam.curves.resize(cubes.cubes.size());
    parallel_for(cubes.cubes.size(), [&](std::size_t i) {
        const auto r = rearrangement(w, cubes.cubes[i]);
        std::vector<Piece> pieces;
        double s = 0.0;
        for (const auto& p : r.plateaus) {
            pieces.push_back({s, s + p.measure, p.value * s, p.value});
            s += p.measure;
        }
        fam.curves[i] = PiecewiseLinear(std::move(pieces), s);
    });
    return fam;
}

IndexEstimate family_index(const CurveFamily& family, const IndexOptions& options) {
    check_options(options);
    if (family.curves.empty()) throw Error(ErrorCode::InvalidArgument, "empty curve family");
    IndexEstimate est;
    est.cap = options.cap;
    est.beta = options.beta;
    est.q = options.q;
    est.level = family.level;
    est.resolution = family.resolution;

    bool have_cap = false, have_hat = false;
    for (double gamma : options.gamma_grid) {
        const auto continuum = search(prepare_family(family, gamma, 0.0), options.beta, options.q,
                                      options.cap, options.tol);
        est.monotone = est.monotone && continuum.monotone;
        if (!have_cap || continuum.delta > est.delta_cap) {
            have_cap = true;
            est.delta_cap = continuum.delta;
            est.gamma_cap = gamma;
            est.ai_at_cap = std::exp(continuum.at_delta.log_value);
            est.ai_above_cap = std::exp(continuum.above.log_value);
            est.witness = {family.cubes.empty() ? DyadicCube{} : family.cubes[continuum.above.curve],
                           continuum.above.s, continuum.above.t};
        }
        std::vector<FloorEstimate> pts;
        for (int j = 0; j < options.floors && family.resolution > 0.0; ++j) {
            const double floor = std::ldexp(family.resolution, options.floor_start + j);
            const auto curves = prepare_family(family, gamma, floor);
            if (std::all_of(curves.begin(), curves.end(), [](const auto& c) { return c.empty(); })) break;
            const auto r = search(curves, options.beta, options.q, options.cap, options.floor_tol);
            est.monotone = est.monotone && r.monotone;
            FloorEstimate fe{gamma, floor, r.delta, 0.0};
            if (r.above.t > r.above.s && r.above.s > 0.0) fe.lambda = std::log(r.above.t / r.above.s);
            pts.push_back(fe);
        }
        est.floors.insert(est.floors.end(), pts.begin(), pts.end());
        const auto fit = extrapolate(pts);
        const double value = fit ? *fit : continuum.delta;
        if (!have_hat || value > est.delta_hat) {
            have_hat = true;
            est.delta_hat = value;
            est.gamma = gamma;
            est.extrapolated = fit.has_value();
        }
    }
    est.delta_hat = std::clamp(est.delta_hat, 0.0, est.delta_cap);
    return est;
}

IndexEstimate single_index(const PiecewiseLinear& phi, double domain, double cap) {
    if (!(domain > 0.0)) throw Error(ErrorCode::InvalidArgument, "single_index: empty domain");
    std::vector<Piece> pieces;
    for (const auto& p : phi.pieces()) {
        if (p.u0 >= domain) break;
        pieces.push_back({p.u0, std::min(p.u1, domain), p.v0, p.b});
    }
    CurveFamily fam;
    fam.kind = "single";
    fam.cubes = {DyadicCube::base()};
    fam.curves = {PiecewiseLinear(std::move(pieces), std::min(domain, phi.domain_end()))};
    fam.resolution = phi.first_breakpoint();
    IndexOptions opt;
    opt.cap = cap;
    opt.gamma_grid = {1.0};
    return family_index(fam, opt);
}

IndexEstimate acks_index(const WeightGrid& w, const CubeFamily& cubes, const IndexOptions& options) {
    IndexOptions opt = options;
    if (opt.floor_start == 0) opt.floor_start = kAcksFloorStart;
    auto est = family_index(acks_family(w, cubes), opt);
    est.lambda_hat = 1.0 - est.delta_hat;
    est.has_lambda = true;
    return est;
}

double samko_alpha(const PiecewiseLinear& phi, const std::vector<double>& h_grid,
                   const std::vector<double>& x_grid) {
    double best = -kInf;
    bool any = false;
    for (double x : x_grid) {
        if (!(x > 1.0)) throw Error(ErrorCode::InvalidArgument, "samko_alpha: x must exceed 1");
        double lo = kInf;
        for (double h : h_grid) {
            if (!(h > 0.0) || x * h > phi.domain_end()) continue;
            lo = std::min(lo, phi.value(x * h) / phi.value(h));
        }
        if (lo == kInf) continue;
        any = true;
        best = std::max(best, std::log(lo) / std::log(x));
    }
    if (!any) throw Error(ErrorCode::InvalidArgument, "samko_alpha: domain too small for any (x, h) pair");
    return best;
}

double samko_alpha(const PiecewiseLinear& phi, double resolution) {
    std::vector<double> h;
    for (double v = 4.0 * resolution; v < phi.domain_end(); v *= 10.0) h.push_back(v);
    return samko_alpha(phi, h, {2.0, 4.0, 8.0, 16.0});
}

HardyResult hardy_residual(const PiecewiseLinear& phi, double domain) {
    const auto& pieces = phi.pieces();
    if (pieces.front().v0 > 0.0)
        throw Error(ErrorCode::DivergentIntegral, "hardy_residual: phi(0+) > 0, the integral diverges");
    const double end = std::min(domain, phi.domain_end());
    HardyResult out;
    double integral = 0.0;  // int_0^{u0} phi(s) ds/s
    auto consider = [&](double value, double t) {
        if (value > out.value) {
            out.value = value;
            out.t = t;
        }
    };
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const auto& p = pieces[i];
        if (p.u0 >= end) break;
        const double u1 = std::min(p.u1, end);
        if (i == 0) {
            // Linear through the origin: int_0^t b s ds/s = b t = phi(t).
            integral = p.b * u1;
            consider(p.b > 0.0 ? 1.0 : kInf, u1);
            continue;
        }
        const double a = p.intercept();
        auto integral_to = [&](double t) { return integral + a * std::log(t / p.u0) + p.b * (t - p.u0); };
        consider(integral / p.at(p.u0), p.u0);
        // d/dt (I/phi) has the sign of h(t) = phi^2/t - b I(t), decreasing when a > 0.
        if (a > 0.0 && p.b != 0.0) {
            auto h = [&](double t) { return p.at(t) * p.at(t) / t - p.b * integral_to(t); };
            double lo = p.u0, hi = u1;
            if (h(lo) > 0.0 && h(hi) < 0.0) {
                for (int k = 0; k < 200 && hi - lo > 1e-15 * hi; ++k) {
                    const double mid = 0.5 * (lo + hi);
                    (h(mid) > 0.0 ? lo : hi) = mid;
                }
                const double t = 0.5 * (lo + hi);
                consider(integral_to(t) / p.at(t), t);
            }
        }
        integral = integral_to(u1);
        consider(integral / p.at(u1), u1);
    }
    return out;
}

}  // namespace rhlab
