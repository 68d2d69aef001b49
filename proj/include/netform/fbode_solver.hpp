#pragma once

#include <vector>

#include "netform/best_response.hpp"
#include "netform/model.hpp"

namespace netform {

/// Discretized mean state, adjoint and aggregate trajectories.
/// Each matrix is K x (n_steps + 1); column i holds the values at t_i.
struct MeanFieldTrajectories {
    Matrix xbar;
    Matrix ybar;
    Matrix zbar;
    TimeGrid grid;
};

/// Connection strengths over the grid: w[i](k, l) is group k's strength
/// toward group l at node i.
struct WeightProfile {
    std::vector<Matrix> w;
    TimeGrid grid;
};

struct EquilibriumSolution {
    MeanFieldTrajectories trajectories;
    WeightProfile weights;
    int iterations = 0;
    std::vector<double> residual_history;
    bool converged = false;
    bool weights_in_unit_interval = false;
};

/// Nonfinite value during a sweep; signals blow-up or a singular system.
class NonFiniteError : public std::runtime_error {
public:
    NonFiniteError(const std::string& what, int node) : std::runtime_error(what), node_(node) {}
    int node() const { return node_; }

private:
    int node_;
};

/// Best-response weight matrix at one node: row k is group k's response to
/// the mean states in xbar_node, with adjoints ybar_node.
Matrix weights_at_node(const Vector& xbar_node, const Vector& ybar_node,
                       const ModelParams& params);

/// Aggregates Z^k = sum_l w(k, l) Xbar^l m^l for every k.
Vector aggregates(const Vector& xbar_node, const Matrix& w_node,
                  const ModelParams& params);

/// Explicit-Euler forward sweep: integrates the K coupled mean-state ODEs
/// from Xbar_0^k = mu0_mean^k, with the adjoints given on the full grid and
/// weights recomputed per node from the current (Xbar, Ybar).
Matrix solve_forward(const Matrix& ybar, const ModelParams& params,
                     const TimeGrid& grid);

/// Explicit-Euler backward sweep from Ybar_T = 0, mean states given on the
/// full grid.
Matrix solve_backward(const Matrix& xbar, const ModelParams& params,
                      const TimeGrid& grid);

/// Fixed-point iteration alternating forward and backward sweeps until the
/// sup-norm change of both families drops below epsilon. On non-convergence
/// returns the best iterate with converged = false.
EquilibriumSolution fixed_point_solve(const ModelParams& params,
                                      const TimeGrid& grid,
                                      const SolverConfig& config);

}  // namespace netform
