// channel.hpp
// Linear coupling of Bob's photon with an environment photon on a beam
// splitter, post-selected on one photon per output port.

#pragma once

#include "concentration/coupling.hpp"
#include "concentration/states.hpp"

namespace concentration {

/// Degree of indistinguishability p in [0, 1] between signal and environment
/// photons: the weight of the interfering (identical-tag) component.
class IndistinguishabilityModel {
public:
    explicit IndistinguishabilityModel(double p);
    double p() const noexcept { return p_; }

private:
    double p_;
};

/// Post-selected two-photon map on (B, E) polarization, basis HH, HV, VH, VV:
///   |pp>  -> (T - R)|pp>
///   |pq>  ->  T|pq> - R|qp>      (q = orthogonal to p)
ComplexMatrix two_photon_map(const CouplingParams& params);

/// Couples qubit B of `input` (A, B) with `env` (E) for perfectly
/// indistinguishable photons. The result is ordered (A, B, E); its success
/// probability is the unnormalized trace of the one-photon-per-port block.
PostSelectedState couple(const DensityMatrix& input, const DensityMatrix& env,
                         const CouplingParams& params);

/// Same coupling for fully distinguishable photons, computed with the Fock
/// oracle using orthogonal internal tags.
PostSelectedState couple_distinguishable(const DensityMatrix& input, const DensityMatrix& env,
                                         const CouplingParams& params);

/// Partial indistinguishability: the coherent branch with weight p and the
/// distinguishable branch with weight 1 - p, each weighted by its own
/// post-selection probability, then renormalized.
PostSelectedState couple_mixed_indistinguishability(const DensityMatrix& input,
                                                    const DensityMatrix& env,
                                                    const CouplingParams& params,
                                                    const IndistinguishabilityModel& model);

}  // namespace concentration
