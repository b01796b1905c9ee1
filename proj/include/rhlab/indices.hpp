#pragma once

#include <string>
#include <vector>

#include "rhlab/curve.hpp"
#include "rhlab/grid.hpp"

namespace rhlab {

struct AiResult {
    double value = 1.0;  // sup of g(s)/g(t) over s <= t; may be +inf
    double s = 0.0;      // witness pair
    double t = 0.0;
};

/// Constant of almost increase of g(u) = phi(u)^q u^{-(beta q + delta)} on
/// [floor, gamma * domain_end), sup over s <= t of g(s)/g(t). With floor = 0
/// the domain is the open interval and limits at 0 are taken exactly.
/// The sup is exact over piece ends and per-piece critical points.
AiResult ai_constant(const PiecewiseLinear& phi, double delta, double gamma, double beta = 0.0,
                     double q = 1.0, double floor = 0.0);

/// Curves indexed by cubes, e.g. {K(., w chi_Q; L^1, L^inf)}_Q.
struct CurveFamily {
    std::vector<DyadicCube> cubes;
    std::vector<PiecewiseLinear> curves;
    std::string kind;        // "k" | "acks" | "single"
    int dim = 1;
    int level = 0;
    double resolution = 0.0; // smallest meaningful abscissa (one cell measure)
};

CurveFamily k_family(const WeightGrid& w, const CubeFamily& cubes);
// Curves t * (w chi_Q)*(t), piecewise linear with downward jumps.
CurveFamily acks_family(const WeightGrid& w, const CubeFamily& cubes);

struct IndexOptions {
    double beta = 0.0;
    double q = 1.0;
    double cap = 16.0;
    std::vector<double> gamma_grid{1.0, 0.5, 0.25, 0.125};
    double tol = 1e-4;        // bisection tolerance of the cap-relative index
    double floor_tol = 1e-7;  // bisection tolerance of the floored estimates
    int floors = 5;           // number of floored estimates
    int floor_start = 0;      // floors are resolution * 2^j, j = floor_start, ...
};

struct IndexWitness {
    DyadicCube cube;
    double s = 0.0;
    double t = 0.0;
};

struct FloorEstimate {
    double gamma = 0.0;
    double floor = 0.0;
    double delta = 0.0;   // largest delta with sup_Q ai <= cap, s >= floor
    double lambda = 0.0;  // log(t/s) of the binding pair just above delta
};

struct IndexEstimate {
    double delta_hat = 0.0;     // resolution-extrapolated index
    double delta_cap = 0.0;     // largest delta with sup_Q ai <= cap (max over gamma)
    double lambda_hat = 0.0;    // 1 - delta_hat, filled for the ACKS family
    bool has_lambda = false;
    double cap = 16.0;
    double gamma = 1.0;         // gamma attaining delta_hat
    double gamma_cap = 1.0;     // gamma attaining delta_cap
    double beta = 0.0;
    double q = 1.0;
    int level = 0;
    double resolution = 0.0;
    IndexWitness witness;       // binding pair just above delta_cap
    double ai_at_cap = 1.0;     // certificate: ai(delta_cap) <= cap
    double ai_above_cap = 1.0;  // certificate: ai(delta_cap + tol) > cap
    bool monotone = true;       // ai observed nondecreasing in delta along the search
    bool extrapolated = false;  // false when delta_hat fell back to delta_cap
    std::vector<FloorEstimate> floors;
};

/// Cap-relative family index: for each gamma, bisection on delta of
/// sup_Q ai(phi_Q, delta, gamma) <= cap. delta_cap is that literal estimate;
/// delta_hat removes its finite-resolution bias by fitting floored estimates
/// delta_j = delta + B / log(t_j/s_j) over floors resolution * 2^j.
IndexEstimate family_index(const CurveFamily& family, const IndexOptions& options = {});

/// Index of a single curve on (0, domain), gamma fixed at 1.
IndexEstimate single_index(const PiecewiseLinear& phi, double domain, double cap = 16.0);

// t w*(t) jumps at every plateau end; relative jumps near the first cells are
// O(1), so the ACKS floors start at 2^3 cells unless the caller sets floor_start.
inline constexpr int kAcksFloorStart = 3;

/// ACKS index: family index of t (w chi_Q)*(t), reported as lambda_hat = 1 - delta_hat.
IndexEstimate acks_index(const WeightGrid& w, const CubeFamily& cubes, const IndexOptions& options = {});

/// alpha = sup_x log(min_h phi(x h) / phi(h)) / log x over the given grids,
/// pairs restricted to x h <= domain_end.
double samko_alpha(const PiecewiseLinear& phi, const std::vector<double>& h_grid,
                   const std::vector<double>& x_grid);
// Decade-spaced h from 4 * resolution, x in {2, 4, 8, 16}.
double samko_alpha(const PiecewiseLinear& phi, double resolution);

struct HardyResult {
    double value = 0.0;  // sup_t (int_0^t phi(s) ds/s) / phi(t)
    double t = 0.0;
};

/// Hardy residual on (0, domain]; exact per-piece integration, sup over
/// piece ends and interior maxima. Throws DivergentIntegral if phi(0+) > 0.
HardyResult hardy_residual(const PiecewiseLinear& phi, double domain);

}  // namespace rhlab
