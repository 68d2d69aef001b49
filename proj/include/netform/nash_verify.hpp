#pragma once

#include "netform/fbode_solver.hpp"

namespace netform {

/// Exact decomposition of the cost for time-deterministic controls:
/// E[(Z - X)^2] = (Zbar - Xbar)^2 + Var(X), so the cost splits into a mean
/// tracking part, a control-independent variance part, and the control cost.
struct CostBreakdown {
    double tracking_mean = 0.0;      ///< integral of (Zbar - Xbar)^2
    double tracking_variance = 0.0;  ///< integral of Var(X)
    double control_cost = 0.0;       ///< integral of nu * sum_l w(l)^2 m^l
    double total = 0.0;
};

struct DeviationReport {
    double baseline_cost = 0.0;
    double best_deviation_cost = 0.0;
    double nash_gap = 0.0;  ///< baseline_cost - best_deviation_cost
    int deviations_tested = 0;
};

/// Bump perturbations of each amplitude, +/- on each (group, time-window)
/// combination, windows covering [0, T], plus full-horizon constant shifts.
struct DeviationFamily {
    std::vector<double> amplitudes{0.01, 0.05, 0.1};
    int windows = 10;
    bool constant_shifts = true;
};

/// State variance of group k under deterministic aggregates:
/// dV/dt = -2 a V + sigma^2, V(0) = mu0_var, integrated exactly per step.
Vector variance_trajectory(int k, const ModelParams& params, const TimeGrid& grid);

/// Cost of group k playing own_weights (K x n_nodes) against fixed population
/// mean trajectories (K x n_nodes). Re-solves the deviating agent's own mean
/// with the same Euler stepping as the equilibrium solver; integrals by
/// trapezoidal rule.
CostBreakdown evaluate_cost(int k, const Matrix& own_weights,
                            const Matrix& population_means,
                            const ModelParams& params, const TimeGrid& grid);

/// Replays the deviating agent's mean trajectory used inside evaluate_cost.
Vector replay_own_mean(int k, const Matrix& own_weights,
                       const Matrix& population_means,
                       const ModelParams& params, const TimeGrid& grid);

/// Unilateral deviation test for group k: population means held fixed at the
/// solution, own weights perturbed over the family. At an equilibrium the
/// gap is <= tolerance.
DeviationReport deviation_check(const EquilibriumSolution& solution, int k,
                                const ModelParams& params, const TimeGrid& grid,
                                const DeviationFamily& family = {});

}  // namespace netform
