#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rhlab/report.hpp"

namespace rhlab {

struct SuiteConfig {
    std::uint64_t seed = 1;
    int cases = 0;        // random corpus size; 0 selects the suite default
    double radius = 8.0;  // comparability radius for two-sided equivalences
    double cap = 16.0;
    std::vector<double> gamma{1.0, 0.5, 0.25, 0.125};
    // Called once per finished case (used for the per-case summary lines).
    std::function<void(const std::string& suite, const CaseResult&)> on_case;
};

/// rearrange, herz, index, gehring, rhp, llogl, acks, stromberg, lorentz,
/// fujii, extrapolation, packing, and "all" (every suite in that order).
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Runs a suite; throws InvalidArgument for an unknown name.
std::vector<TheoremReport> run_suite(const std::string& name, const SuiteConfig& config);

/// Deterministic analytic corpus in d = 1: constants, steps, power weights.
std::vector<std::string> analytic_specs();
/// rand:<seed_i>:lognormal:<sigma_i>, seeds derived from the master seed,
/// sigma cycling through 0.25, 0.5, 1.
std::vector<std::string> random_specs(std::uint64_t seed, int count, std::uint64_t stream = 0);

}  // namespace rhlab
