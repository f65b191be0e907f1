// channel.cpp

#include "concentration/channel.hpp"

#include "concentration/fock.hpp"

namespace concentration {

namespace {

void require_inputs(const DensityMatrix& input, const DensityMatrix& env) {
    if (input.dim() != 4 || env.dim() != 2) {
        throw DimensionError("couple: expected a two-qubit input and a one-qubit environment");
    }
}

}  // namespace

CouplingParams::CouplingParams(double transmittivity) : t_(transmittivity) {
    if (!(t_ >= 0.0 && t_ <= 1.0)) {
        throw ParameterError("CouplingParams: transmittivity must lie in [0, 1]");
    }
}

PostSelectedState post_select(const ComplexMatrix& unnormalized,
                              std::vector<std::size_t> subsystem_dims, double prior_prob) {
    const double tr = unnormalized.trace().real();
    if (!(tr > 0.0)) {
        throw ZeroProbabilityError("post-selection has zero probability");
    }
    return PostSelectedState{DensityMatrix::normalized(unnormalized, std::move(subsystem_dims)),
                             prior_prob * tr};
}

IndistinguishabilityModel::IndistinguishabilityModel(double p) : p_(p) {
    if (!(p_ >= 0.0 && p_ <= 1.0)) {
        throw ParameterError("IndistinguishabilityModel: p must lie in [0, 1]");
    }
}

ComplexMatrix two_photon_map(const CouplingParams& params) {
    const double t = params.T(), r = params.R();
    ComplexMatrix k = ComplexMatrix::Zero(4, 4);
    // Columns are inputs |B E>.
    k(0, 0) = t - r;   // HH
    k(1, 1) = t;       // HV -> T HV - R VH
    k(2, 1) = -r;
    k(2, 2) = t;       // VH -> T VH - R HV
    k(1, 2) = -r;
    k(3, 3) = t - r;   // VV
    return k;
}

PostSelectedState couple(const DensityMatrix& input, const DensityMatrix& env,
                         const CouplingParams& params) {
    require_inputs(input, env);
    // The ket rules define a single Kraus operator on B (x) E, so applying it
    // to each eigencomponent of the input is the same as K rho K+.
    const ComplexMatrix k = kron(identity(2), two_photon_map(params));
    const ComplexMatrix joint = kron(input.mat(), env.mat());
    return post_select(k * joint * k.adjoint(), {2, 2, 2});
}

PostSelectedState couple_distinguishable(const DensityMatrix& input, const DensityMatrix& env,
                                         const CouplingParams& params) {
    require_inputs(input, env);
    auto out = fock::simulate_coupling(input, env, params, fock::TagModel::Orthogonal);
    if (!out) throw ZeroProbabilityError("couple_distinguishable: post-selection has zero probability");
    return *out;
}

PostSelectedState couple_mixed_indistinguishability(const DensityMatrix& input,
                                                    const DensityMatrix& env,
                                                    const CouplingParams& params,
                                                    const IndistinguishabilityModel& model) {
    const double p = model.p();
    if (p == 1.0) return couple(input, env, params);
    const auto dist = couple_distinguishable(input, env, params);
    if (p == 0.0) return dist;
    const auto coh = couple(input, env, params);
    const ComplexMatrix mixed = p * coh.success_prob * coh.rho.mat() +
                                (1.0 - p) * dist.success_prob * dist.rho.mat();
    return post_select(mixed, {2, 2, 2});
}

}  // namespace concentration
