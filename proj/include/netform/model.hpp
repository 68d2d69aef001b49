#pragma once

#include <Eigen/Core>
#include <string>
#include <string_view>
#include <vector>

namespace netform {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Per-group constants of the block model.
struct GroupParams {
    double a = 0.0;         ///< mean-reversion speed toward the aggregate
    double sigma = 1.0;     ///< idiosyncratic volatility, > 0
    double nu = 0.5;        ///< quadratic connection-cost coefficient, > 0
    double m = 1.0;         ///< population proportion, in (0, 1]
    double mu0_mean = 0.0;  ///< expected state at t = 0
    double mu0_var = 0.0;   ///< state variance at t = 0, >= 0
};

/// Ordered group parameters; proportions must sum to one.
struct ModelParams {
    std::vector<GroupParams> groups;

    int num_groups() const { return static_cast<int>(groups.size()); }

    Vector proportions() const;
    Vector initial_means() const;
};

/// Uniform grid t_i = i * dt, i = 0..n_steps, with n_steps * dt == horizon_T.
struct TimeGrid {
    double horizon_T = 1.0;
    double dt = 0.01;
    int n_steps = 100;

    int n_nodes() const { return n_steps + 1; }
    double node(int i) const { return static_cast<double>(i) * dt; }

    static TimeGrid from_horizon(double horizon_T, double dt);
};

/// Fixed-point iteration controls.
struct SolverConfig {
    double epsilon = 1e-8;  ///< sup-norm convergence tolerance
    int max_iters = 10000;
    double damping = 1.0;   ///< relaxation factor in (0, 1]
};

/// Checks every invariant; returns the input unchanged on success.
/// Throws std::invalid_argument naming the first violated invariant
/// (proportions-sum, nonpositive-nu, nonpositive-sigma, nonpositive-m,
/// negative-mu0-var, empty-groups).
ModelParams validate(ModelParams params);

void validate_grid(const TimeGrid& grid);
void validate_config(const SolverConfig& config);

struct Preset {
    ModelParams params;
    TimeGrid grid;
    SolverConfig config;
};

/// Named experiment setups. Known names: base, exp2, exp3, exp4, exp5.
/// Throws std::invalid_argument for anything else.
Preset preset(std::string_view name);

const std::vector<std::string>& preset_names();

}  // namespace netform
