#include "netform/best_response.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

namespace netform {

namespace {

constexpr double kSingularTol = 1e-14;

void check_snapshot(int k, const AgentSnapshot& snap, const ModelParams& params) {
    const int K = params.num_groups();
    if (k < 0 || k >= K) throw std::invalid_argument("group index out of range");
    if (snap.population_means.size() != K) {
        throw std::invalid_argument("population_means length does not match group count");
    }
}

}  // namespace

double hamiltonian(int k, const Vector& w, const AgentSnapshot& snap,
                   const ModelParams& params) {
    check_snapshot(k, snap, params);
    const int K = params.num_groups();
    if (w.size() != K) throw std::invalid_argument("weight vector length does not match group count");

    double aggregate = 0.0;
    double penalty = 0.0;
    for (int l = 0; l < K; ++l) {
        aggregate += w(l) * snap.population_means(l) * params.groups[l].m;
        penalty += w(l) * w(l) * params.groups[l].m;
    }
    const double gap = aggregate - snap.own_state;
    const GroupParams& g = params.groups[k];
    return g.a * gap * snap.own_adjoint + gap * gap + g.nu * penalty;
}

Vector implicit_best_response(int k, const AgentSnapshot& snap,
                              const ModelParams& params) {
    check_snapshot(k, snap, params);
    const int K = params.num_groups();
    const GroupParams& g = params.groups[k];

    Vector b(K);
    for (int l = 0; l < K; ++l) b(l) = snap.population_means(l) * params.groups[l].m;

    // Stationarity system: (2 nu diag(m) + 2 b b^T) w = (2 X - a Y) b
    Matrix A = 2.0 * b * b.transpose();
    for (int l = 0; l < K; ++l) {
        A(l, l) += 2.0 * g.nu * params.groups[l].m;
        if (A(l, l) < kSingularTol) {
            throw SingularSystemError("singular stationarity system: row denominator below tolerance",
                                      std::numeric_limits<double>::infinity());
        }
    }
    const Vector rhs = (2.0 * snap.own_state - g.a * snap.own_adjoint) * b;

    Eigen::LLT<Matrix> llt(A);
    if (llt.info() != Eigen::Success) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(A, Eigen::EigenvaluesOnly);
        const double cond = es.eigenvalues()(K - 1) / std::max(es.eigenvalues()(0), kSingularTol);
        throw SingularSystemError("singular stationarity system", cond);
    }
    Vector w = llt.solve(rhs);
    if (!w.allFinite()) {
        throw SingularSystemError("nonfinite best response", std::numeric_limits<double>::infinity());
    }
    return w;
}

double closed_form_k2(int k, int ell, const AgentSnapshot& snap,
                      const ModelParams& params) {
    if (params.num_groups() != 2) {
        throw std::invalid_argument("closed_form_k2 requires exactly two groups");
    }
    check_snapshot(k, snap, params);
    if (ell < 0 || ell >= 2) throw std::invalid_argument("target group index out of range");

    const GroupParams& g = params.groups[k];
    double weighted_sq = 0.0;
    for (int j = 0; j < 2; ++j) {
        weighted_sq += params.groups[j].m * snap.population_means(j) * snap.population_means(j);
    }
    const double numerator =
        (2.0 * snap.own_state - g.a * snap.own_adjoint) * snap.population_means(ell);
    return numerator / (2.0 * (g.nu + weighted_sq));
}

}  // namespace netform
