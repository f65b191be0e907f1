// coupling.hpp
// Beam-splitter parameters and the post-selected state carrier shared by the
// channel, the Fock oracle and the protocol steps.

#pragma once

#include "concentration/qmath.hpp"

namespace concentration {

/// Beam-splitter transmittivity T in [0, 1]; reflectivity R = 1 - T.
class CouplingParams {
public:
    explicit CouplingParams(double transmittivity);

    double T() const noexcept { return t_; }
    double R() const noexcept { return 1.0 - t_; }

private:
    double t_;
};

/// A normalized state together with the cumulative probability of the
/// post-selections and measurements that produced it.
struct PostSelectedState {
    DensityMatrix rho;
    double success_prob;
};

/// Builds a PostSelectedState from an unnormalized operator. The result's
/// success probability is `prior_prob` times the operator's trace.
PostSelectedState post_select(const ComplexMatrix& unnormalized,
                              std::vector<std::size_t> subsystem_dims,
                              double prior_prob = 1.0);

}  // namespace concentration
