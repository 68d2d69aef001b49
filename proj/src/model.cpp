#include "netform/model.hpp"

#include <cmath>
#include <stdexcept>

namespace netform {

Vector ModelParams::proportions() const {
    Vector m(num_groups());
    for (int k = 0; k < num_groups(); ++k) m(k) = groups[k].m;
    return m;
}

Vector ModelParams::initial_means() const {
    Vector mu0(num_groups());
    for (int k = 0; k < num_groups(); ++k) mu0(k) = groups[k].mu0_mean;
    return mu0;
}

TimeGrid TimeGrid::from_horizon(double horizon_T, double dt) {
    TimeGrid grid;
    grid.horizon_T = horizon_T;
    grid.dt = dt;
    grid.n_steps = static_cast<int>(std::llround(horizon_T / dt));
    validate_grid(grid);
    return grid;
}

ModelParams validate(ModelParams params) {
    if (params.groups.empty()) {
        throw std::invalid_argument("empty-groups: need at least one group");
    }
    double m_sum = 0.0;
    for (std::size_t k = 0; k < params.groups.size(); ++k) {
        const GroupParams& g = params.groups[k];
        const std::string at = " (group " + std::to_string(k) + ")";
        if (!(g.nu > 0.0)) throw std::invalid_argument("nonpositive-nu: nu must be > 0" + at);
        if (!(g.sigma > 0.0)) throw std::invalid_argument("nonpositive-sigma: sigma must be > 0" + at);
        if (!(g.m > 0.0)) throw std::invalid_argument("nonpositive-m: proportion must be > 0" + at);
        if (!(g.mu0_var >= 0.0)) throw std::invalid_argument("negative-mu0-var: variance must be >= 0" + at);
        if (!std::isfinite(g.a) || !std::isfinite(g.mu0_mean)) {
            throw std::invalid_argument("nonfinite-parameter" + at);
        }
        m_sum += g.m;
    }
    if (std::abs(m_sum - 1.0) > 1e-12) {
        throw std::invalid_argument("proportions-sum: group proportions sum to " +
                                    std::to_string(m_sum) + ", expected 1");
    }
    return params;
}

void validate_grid(const TimeGrid& grid) {
    if (!(grid.horizon_T > 0.0)) throw std::invalid_argument("nonpositive-horizon");
    if (!(grid.dt > 0.0)) throw std::invalid_argument("nonpositive-dt");
    if (grid.n_steps < 1) throw std::invalid_argument("empty-grid");
    if (std::abs(grid.n_steps * grid.dt - grid.horizon_T) > 1e-12) {
        throw std::invalid_argument("grid-mismatch: n_steps * dt != horizon_T");
    }
}

void validate_config(const SolverConfig& config) {
    if (!(config.epsilon > 0.0)) throw std::invalid_argument("nonpositive-epsilon");
    if (config.max_iters < 1) throw std::invalid_argument("nonpositive-max-iters");
    if (!(config.damping > 0.0 && config.damping <= 1.0)) {
        throw std::invalid_argument("damping-out-of-range: need 0 < damping <= 1");
    }
}

namespace {

ModelParams two_groups(double a1, double a2, double nu1, double nu2, double m1,
                       double m2, double mu1, double mu2) {
    ModelParams p;
    p.groups = {GroupParams{a1, 1.0, nu1, m1, mu1, 0.0},
                GroupParams{a2, 1.0, nu2, m2, mu2, 0.0}};
    return p;
}

}  // namespace

Preset preset(std::string_view name) {
    Preset result;
    result.grid = TimeGrid{1.0, 0.01, 100};
    result.config = SolverConfig{};
    if (name == "base") {
        result.params = two_groups(0.2, 0.2, 0.5, 0.5, 0.5, 0.5, 1.0, 1.0);
    } else if (name == "exp2") {
        result.params = two_groups(0.2, 0.2, 0.5, 0.5, 0.5, 0.5, 1.0, 2.0);
    } else if (name == "exp3") {
        result.params = two_groups(0.2, 0.2, 1.0, 0.5, 0.5, 0.5, 1.0, 1.0);
    } else if (name == "exp4") {
        result.params = two_groups(0.5, 0.2, 0.5, 0.5, 0.5, 0.5, 1.0, 1.0);
    } else if (name == "exp5") {
        result.params = two_groups(0.5, 0.2, 0.5, 0.5, 0.1, 0.9, 1.0, 1.0);
    } else {
        throw std::invalid_argument("unknown preset: " + std::string(name));
    }
    result.params = validate(std::move(result.params));
    return result;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"base", "exp2", "exp3", "exp4", "exp5"};
    return names;
}

}  // namespace netform
