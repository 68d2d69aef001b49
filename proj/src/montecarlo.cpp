#include "netform/montecarlo.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace netform {

namespace {

// Gaussian draws via Box-Muller on mt19937_64 uniforms; pinned here so path
// output does not depend on the libc normal_distribution implementation.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed, std::uint64_t stream) {
        std::seed_seq seq{seed, stream};
        engine_.seed(seq);
    }

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1;
        do {
            u1 = uniform_(engine_);
        } while (u1 <= 0.0);
        const double u2 = uniform_(engine_);
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace

PathSet simulate_paths(const EquilibriumSolution& solution,
                       const ModelParams& params, const TimeGrid& grid,
                       int num_paths, std::uint64_t seed) {
    if (num_paths < 1) throw std::invalid_argument("need at least one path");
    const int K = params.num_groups();
    const int n = grid.n_nodes();
    const Matrix& zbar = solution.trajectories.zbar;
    if (zbar.rows() != K || zbar.cols() != n) {
        throw std::invalid_argument("simulate_paths: solution does not match grid");
    }
    const double sqrt_dt = std::sqrt(grid.dt);

    PathSet pathset;
    pathset.seed = seed;
    pathset.num_paths = num_paths;
    pathset.paths.reserve(num_paths);
    for (int p = 0; p < num_paths; ++p) {
        GaussianStream rng(seed, static_cast<std::uint64_t>(p));
        Matrix path(K, n);
        for (int k = 0; k < K; ++k) {
            const GroupParams& g = params.groups[k];
            path(k, 0) = g.mu0_mean + std::sqrt(g.mu0_var) * rng.next();
            for (int i = 0; i < grid.n_steps; ++i) {
                path(k, i + 1) = path(k, i) + g.a * (zbar(k, i) - path(k, i)) * grid.dt +
                                 g.sigma * sqrt_dt * rng.next();
            }
        }
        if (!path.allFinite()) {
            throw NonFiniteError("sample path became nonfinite (path " + std::to_string(p) + ")", -1);
        }
        pathset.paths.push_back(std::move(path));
    }
    return pathset;
}

std::vector<CostEstimate> empirical_cost(const PathSet& pathset,
                                         const EquilibriumSolution& solution,
                                         const ModelParams& params,
                                         const TimeGrid& grid) {
    const int K = params.num_groups();
    const int n = grid.n_nodes();
    const int M = pathset.num_paths;
    const Matrix& zbar = solution.trajectories.zbar;

    // Control cost is deterministic; precompute its trapezoidal integral per group.
    std::vector<double> control(K, 0.0);
    for (int k = 0; k < K; ++k) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            double penalty = 0.0;
            for (int l = 0; l < K; ++l) {
                const double w = solution.weights.w[i](k, l);
                penalty += w * w * params.groups[l].m;
            }
            const double weight = (i == 0 || i == n - 1) ? 0.5 : 1.0;
            acc += weight * params.groups[k].nu * penalty;
        }
        control[k] = acc * grid.dt;
    }

    std::vector<CostEstimate> estimates(K);
    for (int k = 0; k < K; ++k) {
        double sum = 0.0;
        double sum_sq = 0.0;
        for (const Matrix& path : pathset.paths) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                const double gap = zbar(k, i) - path(k, i);
                const double weight = (i == 0 || i == n - 1) ? 0.5 : 1.0;
                acc += weight * gap * gap;
            }
            const double cost = acc * grid.dt + control[k];
            sum += cost;
            sum_sq += cost * cost;
        }
        const double mean = sum / M;
        estimates[k].mean = mean;
        if (M > 1) {
            const double var = (sum_sq - M * mean * mean) / (M - 1);
            estimates[k].std_error = std::sqrt(std::max(var, 0.0) / M);
        }
    }
    return estimates;
}

}  // namespace netform
