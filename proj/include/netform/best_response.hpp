#pragma once

#include <stdexcept>

#include "netform/model.hpp"

namespace netform {

/// Inputs of the per-group control problem at one instant. In the expected
/// system, own_state and own_adjoint carry the mean state and mean adjoint.
struct AgentSnapshot {
    double own_state = 0.0;
    double own_adjoint = 0.0;
    Vector population_means;  ///< length K
};

/// The K x K stationarity system is numerically rank-deficient; signals
/// degenerate parameters, not a bug.
class SingularSystemError : public std::runtime_error {
public:
    SingularSystemError(const std::string& what, double condition_estimate)
        : std::runtime_error(what), condition_estimate_(condition_estimate) {}
    double condition_estimate() const { return condition_estimate_; }

private:
    double condition_estimate_;
};

/// Instantaneous Hamiltonian of the representative agent of group k:
///   H = a^k (Z - X^k) Y^k + (Z - X^k)^2 + nu^k sum_l w(l)^2 m^l,
/// with Z = sum_l w(l) Xbar^l m^l.
double hamiltonian(int k, const Vector& w, const AgentSnapshot& snap,
                   const ModelParams& params);

/// Best-response connection strengths of group k: the unique solution of the
/// K x K linear stationarity system of the Hamiltonian, which is its global
/// minimizer in w (H is strictly convex for nu > 0). Dense direct solve.
Vector implicit_best_response(int k, const AgentSnapshot& snap,
                              const ModelParams& params);

/// Two-group closed form of the best response,
///   w^k(l) = (2 X^k - a^k Y^k) Xbar^l / (2 (nu^k + sum_j m^j (Xbar^j)^2)),
/// algebraically equal to the solution of the stationarity system.
/// Throws if K != 2.
double closed_form_k2(int k, int ell, const AgentSnapshot& snap,
                      const ModelParams& params);

}  // namespace netform
