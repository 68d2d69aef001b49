#include "netform/fbode_solver.hpp"

#include <cmath>

namespace netform {

namespace {

void check_node_finite(const Vector& v, int node, const char* what) {
    if (!v.allFinite()) {
        throw NonFiniteError(std::string(what) + " became nonfinite at node " + std::to_string(node),
                             node);
    }
}

}  // namespace

Matrix weights_at_node(const Vector& xbar_node, const Vector& ybar_node,
                       const ModelParams& params) {
    const int K = params.num_groups();
    Matrix w(K, K);
    AgentSnapshot snap;
    snap.population_means = xbar_node;
    for (int k = 0; k < K; ++k) {
        snap.own_state = xbar_node(k);
        snap.own_adjoint = ybar_node(k);
        w.row(k) = implicit_best_response(k, snap, params).transpose();
    }
    return w;
}

Vector aggregates(const Vector& xbar_node, const Matrix& w_node,
                  const ModelParams& params) {
    const int K = params.num_groups();
    if (xbar_node.size() != K || w_node.rows() != K || w_node.cols() != K) {
        throw std::invalid_argument("aggregates: dimension mismatch");
    }
    Vector z(K);
    for (int k = 0; k < K; ++k) {
        double acc = 0.0;
        for (int l = 0; l < K; ++l) acc += w_node(k, l) * xbar_node(l) * params.groups[l].m;
        z(k) = acc;
    }
    return z;
}

Matrix solve_forward(const Matrix& ybar, const ModelParams& params,
                     const TimeGrid& grid) {
    const int K = params.num_groups();
    if (ybar.rows() != K || ybar.cols() != grid.n_nodes()) {
        throw std::invalid_argument("solve_forward: adjoint dimensions do not match grid");
    }
    Matrix xbar(K, grid.n_nodes());
    xbar.col(0) = params.initial_means();
    for (int i = 0; i < grid.n_steps; ++i) {
        const Vector x = xbar.col(i);
        const Matrix w = weights_at_node(x, ybar.col(i), params);
        const Vector z = aggregates(x, w, params);
        for (int k = 0; k < K; ++k) {
            xbar(k, i + 1) = x(k) + params.groups[k].a * (z(k) - x(k)) * grid.dt;
        }
        check_node_finite(xbar.col(i + 1), i + 1, "forward state");
    }
    return xbar;
}

Matrix solve_backward(const Matrix& xbar, const ModelParams& params,
                      const TimeGrid& grid) {
    const int K = params.num_groups();
    if (xbar.rows() != K || xbar.cols() != grid.n_nodes()) {
        throw std::invalid_argument("solve_backward: state dimensions do not match grid");
    }
    Matrix ybar(K, grid.n_nodes());
    ybar.col(grid.n_steps).setZero();
    for (int i = grid.n_steps - 1; i >= 0; --i) {
        const Vector x = xbar.col(i + 1);
        const Vector y = ybar.col(i + 1);
        const Matrix w = weights_at_node(x, y, params);
        const Vector z = aggregates(x, w, params);
        for (int k = 0; k < K; ++k) {
            ybar(k, i) = y(k) - grid.dt * (params.groups[k].a * y(k) + 2.0 * (z(k) - x(k)));
        }
        check_node_finite(ybar.col(i), i, "backward adjoint");
    }
    return ybar;
}

EquilibriumSolution fixed_point_solve(const ModelParams& params,
                                      const TimeGrid& grid,
                                      const SolverConfig& config) {
    validate_grid(grid);
    validate_config(config);
    const int K = params.num_groups();
    const int n = grid.n_nodes();

    Matrix x_old = params.initial_means().replicate(1, n);
    Matrix y_old = Matrix::Zero(K, n);

    EquilibriumSolution solution;
    for (int iter = 0; iter < config.max_iters; ++iter) {
        Matrix x_new = solve_forward(y_old, params, grid);
        Matrix y_new = solve_backward(x_old, params, grid);
        if (config.damping < 1.0) {
            x_new = config.damping * x_new + (1.0 - config.damping) * x_old;
            y_new = config.damping * y_new + (1.0 - config.damping) * y_old;
        }
        const double residual = std::max((x_new - x_old).cwiseAbs().maxCoeff(),
                                         (y_new - y_old).cwiseAbs().maxCoeff());
        solution.residual_history.push_back(residual);
        x_old = std::move(x_new);
        y_old = std::move(y_new);
        if (residual <= config.epsilon) {
            solution.converged = true;
            break;
        }
    }
    solution.iterations = static_cast<int>(solution.residual_history.size());

    // Bookkeeping pass: rebuild the forward trajectory once more, capturing
    // the weights and aggregates actually used at each node, so that a cost
    // replay with the stored profile reproduces xbar exactly.
    solution.weights.grid = grid;
    solution.weights.w.assign(n, Matrix(K, K));
    MeanFieldTrajectories& traj = solution.trajectories;
    traj.grid = grid;
    traj.xbar.resize(K, n);
    traj.ybar = y_old;
    traj.zbar.resize(K, n);
    traj.xbar.col(0) = params.initial_means();
    for (int i = 0; i < n; ++i) {
        const Vector x = traj.xbar.col(i);
        const Matrix w = weights_at_node(x, y_old.col(i), params);
        const Vector z = aggregates(x, w, params);
        solution.weights.w[i] = w;
        traj.zbar.col(i) = z;
        if (i < grid.n_steps) {
            for (int k = 0; k < K; ++k) {
                traj.xbar(k, i + 1) = x(k) + params.groups[k].a * (z(k) - x(k)) * grid.dt;
            }
            check_node_finite(traj.xbar.col(i + 1), i + 1, "forward state");
        }
    }

    solution.weights_in_unit_interval = true;
    for (const Matrix& w : solution.weights.w) {
        if ((w.array() < 0.0).any() || (w.array() > 1.0).any()) {
            solution.weights_in_unit_interval = false;
            break;
        }
    }
    return solution;
}

}  // namespace netform
