#include "netform/nash_verify.hpp"

#include <algorithm>
#include <cmath>

namespace netform {

namespace {

// Trapezoidal rule over the grid.
double integrate(const Vector& values, const TimeGrid& grid) {
    const int n = grid.n_steps;
    double acc = 0.5 * (values(0) + values(n));
    for (int i = 1; i < n; ++i) acc += values(i);
    return acc * grid.dt;
}

}  // namespace

Vector variance_trajectory(int k, const ModelParams& params, const TimeGrid& grid) {
    if (k < 0 || k >= params.num_groups()) throw std::invalid_argument("group index out of range");
    const GroupParams& g = params.groups[k];
    Vector v(grid.n_nodes());
    v(0) = g.mu0_var;
    const double a2 = 2.0 * g.a;
    const double s2 = g.sigma * g.sigma;
    for (int i = 0; i < grid.n_steps; ++i) {
        if (std::abs(a2) * grid.dt < 1e-12) {
            v(i + 1) = v(i) + s2 * grid.dt;
        } else {
            const double decay = std::exp(-a2 * grid.dt);
            v(i + 1) = v(i) * decay + s2 * (-std::expm1(-a2 * grid.dt)) / a2;
        }
    }
    return v;
}

Vector replay_own_mean(int k, const Matrix& own_weights,
                       const Matrix& population_means,
                       const ModelParams& params, const TimeGrid& grid) {
    const int K = params.num_groups();
    const int n = grid.n_nodes();
    if (own_weights.rows() != K || own_weights.cols() != n ||
        population_means.rows() != K || population_means.cols() != n) {
        throw std::invalid_argument("evaluate_cost: dimension mismatch");
    }
    const GroupParams& g = params.groups[k];
    Vector x(n);
    x(0) = g.mu0_mean;
    for (int i = 0; i < grid.n_steps; ++i) {
        // Same summation order as aggregates() so an equilibrium replay is exact.
        double z = 0.0;
        for (int l = 0; l < K; ++l) {
            z += own_weights(l, i) * population_means(l, i) * params.groups[l].m;
        }
        x(i + 1) = x(i) + g.a * (z - x(i)) * grid.dt;
        if (!std::isfinite(x(i + 1))) {
            throw NonFiniteError("deviating mean became nonfinite at node " + std::to_string(i + 1),
                                 i + 1);
        }
    }
    return x;
}

CostBreakdown evaluate_cost(int k, const Matrix& own_weights,
                            const Matrix& population_means,
                            const ModelParams& params, const TimeGrid& grid) {
    if (k < 0 || k >= params.num_groups()) throw std::invalid_argument("group index out of range");
    const int K = params.num_groups();
    const int n = grid.n_nodes();
    const GroupParams& g = params.groups[k];

    const Vector x = replay_own_mean(k, own_weights, population_means, params, grid);

    Vector tracking(n);
    Vector control(n);
    for (int i = 0; i < n; ++i) {
        double z = 0.0;
        double penalty = 0.0;
        for (int l = 0; l < K; ++l) {
            z += own_weights(l, i) * population_means(l, i) * params.groups[l].m;
            penalty += own_weights(l, i) * own_weights(l, i) * params.groups[l].m;
        }
        const double gap = z - x(i);
        tracking(i) = gap * gap;
        control(i) = g.nu * penalty;
    }

    CostBreakdown cost;
    cost.tracking_mean = integrate(tracking, grid);
    cost.tracking_variance = integrate(variance_trajectory(k, params, grid), grid);
    cost.control_cost = integrate(control, grid);
    cost.total = cost.tracking_mean + cost.tracking_variance + cost.control_cost;
    return cost;
}

DeviationReport deviation_check(const EquilibriumSolution& solution, int k,
                                const ModelParams& params, const TimeGrid& grid,
                                const DeviationFamily& family) {
    const int K = params.num_groups();
    const int n = grid.n_nodes();
    const Matrix& popmeans = solution.trajectories.xbar;

    // Group k's own weight rows over the grid, K x n.
    Matrix own(K, n);
    for (int i = 0; i < n; ++i) own.col(i) = solution.weights.w[i].row(k).transpose();

    DeviationReport report;
    report.baseline_cost = evaluate_cost(k, own, popmeans, params, grid).total;
    report.best_deviation_cost = report.baseline_cost;
    report.deviations_tested = 0;

    auto try_deviation = [&](const Matrix& candidate) {
        const double cost = evaluate_cost(k, candidate, popmeans, params, grid).total;
        report.best_deviation_cost = std::min(report.best_deviation_cost, cost);
        ++report.deviations_tested;
    };

    const int windows = std::max(1, family.windows);
    for (int l = 0; l < K; ++l) {
        for (int w = 0; w < windows; ++w) {
            const int lo = (w * n) / windows;
            const int hi = ((w + 1) * n) / windows;  // exclusive
            for (double delta : family.amplitudes) {
                for (double sign : {1.0, -1.0}) {
                    Matrix candidate = own;
                    for (int i = lo; i < hi; ++i) candidate(l, i) += sign * delta;
                    try_deviation(candidate);
                }
            }
        }
        if (family.constant_shifts) {
            for (double delta : family.amplitudes) {
                for (double sign : {1.0, -1.0}) {
                    Matrix candidate = own;
                    candidate.row(l).array() += sign * delta;
                    try_deviation(candidate);
                }
            }
        }
    }
    report.nash_gap = report.baseline_cost - report.best_deviation_cost;
    return report;
}

}  // namespace netform
