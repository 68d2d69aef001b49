#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "netform/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 1;
constexpr int kExitNoConvergence = 2;
constexpr int kExitVerificationFailure = 3;

constexpr double kNashTolScale = 1e-4;

struct CliOptions {
    std::string preset;
    std::string config_path;
    std::string out_dir = "out";
    double eps = -1.0;
    double dt = -1.0;
    int max_iter = -1;
    double damping = -1.0;
    bool verify_nash = false;
    int mc_paths = 0;
    std::uint64_t seed = 0;
    bool refine = false;
};

int run(const CliOptions& opts) {
    netform::RunConfig config;
    try {
        if (!opts.preset.empty()) {
            netform::Preset p = netform::preset(opts.preset);
            config = {p.params, p.grid, p.config};
        } else {
            config = netform::load_config_file(opts.config_path);
        }
        if (opts.eps > 0.0) config.solver.epsilon = opts.eps;
        if (opts.max_iter > 0) config.solver.max_iters = opts.max_iter;
        if (opts.damping > 0.0) config.solver.damping = opts.damping;
        if (opts.dt > 0.0) config.grid = netform::TimeGrid::from_horizon(config.grid.horizon_T, opts.dt);
        netform::validate_config(config.solver);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }

    fs::create_directories(opts.out_dir);
    const auto t0 = std::chrono::steady_clock::now();

    netform::EquilibriumSolution solution;
    try {
        solution = netform::fixed_point_solve(config.params, config.grid, config.solver);
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitNoConvergence;
    }

    netform::RunManifest manifest;
    manifest.config = config;
    manifest.converged = solution.converged;
    manifest.iterations = solution.iterations;
    manifest.final_residual =
        solution.residual_history.empty() ? 0.0 : solution.residual_history.back();
    manifest.weights_in_unit_interval = solution.weights_in_unit_interval;

    netform::write_trajectories_csv(fs::path(opts.out_dir) / "trajectories.csv", solution);
    netform::write_weights_csv(fs::path(opts.out_dir) / "weights.csv", solution);

    int exit_code = solution.converged ? kExitOk : kExitNoConvergence;
    if (!solution.converged) {
        std::cerr << "solver did not converge within " << config.solver.max_iters
                  << " iterations (last residual " << manifest.final_residual << ")\n";
    }

    if (opts.verify_nash && solution.converged) {
        json report = json::array();
        bool all_pass = true;
        for (int k = 0; k < config.params.num_groups(); ++k) {
            const netform::DeviationReport dev =
                netform::deviation_check(solution, k, config.params, config.grid);
            const double tol = kNashTolScale * (1.0 + dev.baseline_cost);
            const bool pass = dev.nash_gap <= tol;
            all_pass = all_pass && pass;
            report.push_back({{"group", k + 1},
                              {"baseline_cost", dev.baseline_cost},
                              {"best_deviation_cost", dev.best_deviation_cost},
                              {"nash_gap", dev.nash_gap},
                              {"deviations_tested", dev.deviations_tested},
                              {"tolerance", tol},
                              {"pass", pass}});
        }
        std::ofstream out(fs::path(opts.out_dir) / "nash_report.json");
        out << report.dump(2) << "\n";
        if (!all_pass) {
            std::cerr << "nash verification failed, see nash_report.json\n";
            exit_code = kExitVerificationFailure;
        }
    }

    if (opts.mc_paths > 0 && solution.converged) {
        const netform::PathSet paths = netform::simulate_paths(
            solution, config.params, config.grid, opts.mc_paths, opts.seed);
        const auto estimates =
            netform::empirical_cost(paths, solution, config.params, config.grid);
        std::vector<double> analytic;
        const int n = config.grid.n_nodes();
        for (int k = 0; k < config.params.num_groups(); ++k) {
            netform::Matrix own(config.params.num_groups(), n);
            for (int i = 0; i < n; ++i) own.col(i) = solution.weights.w[i].row(k).transpose();
            analytic.push_back(netform::evaluate_cost(k, own, solution.trajectories.xbar,
                                                      config.params, config.grid)
                                   .total);
        }
        netform::write_mc_summary_csv(fs::path(opts.out_dir) / "mc_summary.csv", estimates,
                                      analytic, opts.mc_paths);
        manifest.montecarlo = netform::MonteCarloInfo{opts.mc_paths, opts.seed};
    }

    if (opts.refine && solution.converged) {
        const netform::TimeGrid fine =
            netform::TimeGrid::from_horizon(config.grid.horizon_T, config.grid.dt / 2.0);
        const netform::EquilibriumSolution refined =
            netform::fixed_point_solve(config.params, fine, config.solver);
        std::cout << "refinement check (dt=" << config.grid.dt << " vs " << fine.dt << "):\n";
        for (int k = 0; k < config.params.num_groups(); ++k) {
            const double coarse_T = solution.trajectories.xbar(k, config.grid.n_steps);
            const double fine_T = refined.trajectories.xbar(k, fine.n_steps);
            std::cout << "  group " << (k + 1) << " terminal xbar difference: "
                      << (coarse_T - fine_T) << "\n";
        }
    }

    manifest.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    netform::write_manifest(fs::path(opts.out_dir) / "manifest.json", manifest);

    std::cout << (solution.converged ? "converged" : "not converged") << " after "
              << solution.iterations << " iterations; outputs in " << opts.out_dir << "\n";
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equilibrium network formation solver for grouped populations"};
    CliOptions opts;

    auto* preset_opt = app.add_option("--preset", opts.preset, "named experiment setup");
    auto* config_opt = app.add_option("--config", opts.config_path, "JSON config file");
    preset_opt->excludes(config_opt);
    app.add_option("--out-dir", opts.out_dir, "output directory")->capture_default_str();
    app.add_option("--eps", opts.eps, "convergence tolerance override");
    app.add_option("--dt", opts.dt, "time step override");
    app.add_option("--max-iter", opts.max_iter, "iteration cap override");
    app.add_option("--damping", opts.damping, "relaxation factor override");
    app.add_flag("--verify-nash", opts.verify_nash, "run the unilateral deviation check");
    auto* mc_opt = app.add_option("--mc-paths", opts.mc_paths, "Monte Carlo path count");
    auto* seed_opt = app.add_option("--seed", opts.seed, "Monte Carlo RNG seed");
    mc_opt->needs(seed_opt);
    seed_opt->needs(mc_opt);
    app.add_flag("--refine", opts.refine, "re-run at dt/2 and report the difference");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInvalidInput;
    }

    if (opts.preset.empty() == opts.config_path.empty()) {
        std::cerr << "error: exactly one of --preset or --config is required\n";
        return kExitInvalidInput;
    }
    return run(opts);
}
