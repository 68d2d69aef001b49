#pragma once

#include <cstdint>
#include <optional>

#include "netform/fbode_solver.hpp"
#include "netform/nash_verify.hpp"

namespace netform {

/// Identifier of the path generator, recorded in run manifests.
inline constexpr const char* kRngDescription =
    "mt19937_64 + Box-Muller, per-path seed_seq(seed, path)";

/// Sample paths of the state SDEs under frozen equilibrium aggregates.
/// paths[p] is K x (n_steps + 1).
struct PathSet {
    std::vector<Matrix> paths;
    std::uint64_t seed = 0;
    int num_paths = 0;
};

struct CostEstimate {
    double mean = 0.0;
    std::optional<double> std_error;  ///< absent for a single path
};

/// Euler-Maruyama paths: X_{i+1} = X_i + a (Zbar(t_i) - X_i) dt + sigma
/// sqrt(dt) xi, with X_0 = mu0_mean + sqrt(mu0_var) xi_0. Deterministic
/// replay under the same seed; per-path substreams.
PathSet simulate_paths(const EquilibriumSolution& solution,
                       const ModelParams& params, const TimeGrid& grid,
                       int num_paths, std::uint64_t seed);

/// Monte Carlo estimate of the realized per-group cost under the equilibrium
/// weights, mean +/- standard error across paths.
std::vector<CostEstimate> empirical_cost(const PathSet& pathset,
                                         const EquilibriumSolution& solution,
                                         const ModelParams& params,
                                         const TimeGrid& grid);

}  // namespace netform
