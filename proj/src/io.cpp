#include "netform/io.hpp"

#include <cstdio>
#include <fstream>

namespace netform {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) throw std::invalid_argument("unknown key '" + item.key() + "' in " + where);
    }
}

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17e", value);
    return buffer;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

void check_nonempty(const EquilibriumSolution& solution) {
    if (solution.trajectories.xbar.size() == 0 || solution.weights.w.empty()) {
        throw std::invalid_argument("empty solution");
    }
}

}  // namespace

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("config root must be an object");
    reject_unknown_keys(doc, {"groups", "horizon_T", "dt", "epsilon", "max_iters", "damping"},
                        "config");
    if (!doc.contains("groups") || !doc.contains("horizon_T") || !doc.contains("dt")) {
        throw std::invalid_argument("config requires groups, horizon_T and dt");
    }

    RunConfig config;
    for (const auto& entry : doc.at("groups")) {
        reject_unknown_keys(entry, {"a", "sigma", "nu", "m", "mu0_mean", "mu0_var"}, "group");
        GroupParams g;
        g.a = entry.at("a").get<double>();
        g.nu = entry.at("nu").get<double>();
        g.m = entry.at("m").get<double>();
        g.mu0_mean = entry.at("mu0_mean").get<double>();
        g.sigma = entry.value("sigma", 1.0);
        g.mu0_var = entry.value("mu0_var", 0.0);
        config.params.groups.push_back(g);
    }
    config.params = validate(std::move(config.params));
    config.grid = TimeGrid::from_horizon(doc.at("horizon_T").get<double>(),
                                         doc.at("dt").get<double>());
    config.solver.epsilon = doc.value("epsilon", SolverConfig{}.epsilon);
    config.solver.max_iters = doc.value("max_iters", SolverConfig{}.max_iters);
    config.solver.damping = doc.value("damping", SolverConfig{}.damping);
    validate_config(config.solver);
    return config;
}

json config_to_json(const RunConfig& config) {
    json groups = json::array();
    for (const GroupParams& g : config.params.groups) {
        groups.push_back({{"a", g.a},
                          {"sigma", g.sigma},
                          {"nu", g.nu},
                          {"m", g.m},
                          {"mu0_mean", g.mu0_mean},
                          {"mu0_var", g.mu0_var}});
    }
    return {{"groups", groups},
            {"horizon_T", config.grid.horizon_T},
            {"dt", config.grid.dt},
            {"epsilon", config.solver.epsilon},
            {"max_iters", config.solver.max_iters},
            {"damping", config.solver.damping}};
}

RunConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("malformed config file " + path.string() + ": " + e.what());
    }
    return parse_config(doc);
}

json manifest_to_json(const RunManifest& manifest) {
    json doc{{"version", manifest.version},
             {"config", config_to_json(manifest.config)},
             {"converged", manifest.converged},
             {"iterations", manifest.iterations},
             {"final_residual", manifest.final_residual},
             {"weights_in_unit_interval", manifest.weights_in_unit_interval},
             {"wall_time_seconds", manifest.wall_time_seconds}};
    if (manifest.montecarlo) {
        doc["montecarlo"] = {{"paths", manifest.montecarlo->num_paths},
                             {"seed", manifest.montecarlo->seed},
                             {"rng", manifest.montecarlo->rng}};
    }
    return doc;
}

RunManifest manifest_from_json(const json& doc) {
    RunManifest manifest;
    manifest.version = doc.at("version").get<std::string>();
    manifest.config = parse_config(doc.at("config"));
    manifest.converged = doc.at("converged").get<bool>();
    manifest.iterations = doc.at("iterations").get<int>();
    manifest.final_residual = doc.at("final_residual").get<double>();
    manifest.weights_in_unit_interval = doc.at("weights_in_unit_interval").get<bool>();
    manifest.wall_time_seconds = doc.at("wall_time_seconds").get<double>();
    if (doc.contains("montecarlo")) {
        MonteCarloInfo info;
        info.num_paths = doc.at("montecarlo").at("paths").get<int>();
        info.seed = doc.at("montecarlo").at("seed").get<std::uint64_t>();
        info.rng = doc.at("montecarlo").at("rng").get<std::string>();
        manifest.montecarlo = info;
    }
    return manifest;
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
    auto out = open_for_write(path);
    out << manifest_to_json(manifest).dump(2) << "\n";
}

void write_trajectories_csv(const std::filesystem::path& path,
                            const EquilibriumSolution& solution) {
    check_nonempty(solution);
    const MeanFieldTrajectories& traj = solution.trajectories;
    const int K = static_cast<int>(traj.xbar.rows());
    auto out = open_for_write(path);

    out << "t";
    for (int k = 1; k <= K; ++k) {
        out << ",xbar_" << k << ",ybar_" << k << ",zbar_" << k;
    }
    out << "\n";
    for (int i = 0; i < traj.grid.n_nodes(); ++i) {
        out << format_double(traj.grid.node(i));
        for (int k = 0; k < K; ++k) {
            out << "," << format_double(traj.xbar(k, i)) << "," << format_double(traj.ybar(k, i))
                << "," << format_double(traj.zbar(k, i));
        }
        out << "\n";
    }
}

void write_weights_csv(const std::filesystem::path& path,
                       const EquilibriumSolution& solution) {
    check_nonempty(solution);
    const int K = static_cast<int>(solution.weights.w.front().rows());
    auto out = open_for_write(path);

    out << "t";
    for (int k = 1; k <= K; ++k) {
        for (int l = 1; l <= K; ++l) out << ",w_" << k << "_" << l;
    }
    out << "\n";
    for (int i = 0; i < solution.weights.grid.n_nodes(); ++i) {
        out << format_double(solution.weights.grid.node(i));
        for (int k = 0; k < K; ++k) {
            for (int l = 0; l < K; ++l) out << "," << format_double(solution.weights.w[i](k, l));
        }
        out << "\n";
    }
}

void write_mc_summary_csv(const std::filesystem::path& path,
                          const std::vector<CostEstimate>& estimates,
                          const std::vector<double>& analytic_totals,
                          int num_paths) {
    if (estimates.size() != analytic_totals.size()) {
        throw std::invalid_argument("mc summary: dimension mismatch");
    }
    auto out = open_for_write(path);
    out << "group,paths,cost_mean,cost_std_error,analytic_total\n";
    for (std::size_t k = 0; k < estimates.size(); ++k) {
        out << (k + 1) << "," << num_paths << "," << format_double(estimates[k].mean) << ",";
        if (estimates[k].std_error) out << format_double(*estimates[k].std_error);
        out << "," << format_double(analytic_totals[k]) << "\n";
    }
}

}  // namespace netform
