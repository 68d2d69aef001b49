#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "netform/fbode_solver.hpp"
#include "netform/montecarlo.hpp"

namespace netform {

inline constexpr const char* kVersion = "0.1.0";

/// Everything a solver run needs.
struct RunConfig {
    ModelParams params;
    TimeGrid grid;
    SolverConfig solver;
};

/// Parses the config document. Top-level keys: groups, horizon_T, dt,
/// epsilon, max_iters, damping; group keys: a, sigma, nu, m, mu0_mean,
/// mu0_var. Unknown keys are errors; the result is validated.
RunConfig parse_config(const nlohmann::json& doc);
nlohmann::json config_to_json(const RunConfig& config);
RunConfig load_config_file(const std::filesystem::path& path);

struct MonteCarloInfo {
    int num_paths = 0;
    std::uint64_t seed = 0;
    std::string rng = kRngDescription;
};

/// Record of one solver run; serializes losslessly (the embedded config
/// object follows the config-file schema and can seed a rerun).
struct RunManifest {
    RunConfig config;
    bool converged = false;
    int iterations = 0;
    double final_residual = 0.0;
    bool weights_in_unit_interval = false;
    double wall_time_seconds = 0.0;
    std::string version = kVersion;
    std::optional<MonteCarloInfo> montecarlo;
};

nlohmann::json manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const nlohmann::json& doc);
void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

/// trajectories.csv: t, then xbar_k, ybar_k, zbar_k per group, group index
/// ascending. Full double precision scientific notation.
void write_trajectories_csv(const std::filesystem::path& path,
                            const EquilibriumSolution& solution);

/// weights.csv: t, then w_k_l for k ascending, l ascending.
void write_weights_csv(const std::filesystem::path& path,
                       const EquilibriumSolution& solution);

/// mc_summary.csv: group, paths, cost_mean, cost_std_error, analytic_total.
void write_mc_summary_csv(const std::filesystem::path& path,
                          const std::vector<CostEstimate>& estimates,
                          const std::vector<double>& analytic_totals,
                          int num_paths);

}  // namespace netform
