// cascade.cpp

#include "concentration/cascade.hpp"

#include <cmath>
#include <string>

namespace concentration {

void CascadeParams::validate() const {
    if (transmittivities.empty()) throw ParameterError("cascade: need at least one coupling");
    for (double t : transmittivities) {
        if (!(t >= 0.0 && t <= 1.0)) throw ParameterError("cascade: transmittivity outside [0, 1]");
    }
    if (!(eps > 0.0 && eps <= 1.0)) throw ParameterError("cascade: eps must lie in (0, 1]");
}

double CascadeCoefficients::scale() const { return std::ldexp(1.0, static_cast<int>(n) + 1); }

double CascadeCoefficients::p_ii() const { return (A + B + C) / scale(); }

CascadeCoefficients coefficients(const std::vector<double>& transmittivities) {
    if (transmittivities.empty()) throw ParameterError("cascade: need at least one coupling");
    CascadeCoefficients k;
    k.A = 1.0;
    k.B = 1.0;
    k.coherence = 1.0;
    for (double t : transmittivities) {
        if (!(t >= 0.0 && t <= 1.0)) throw ParameterError("cascade: transmittivity outside [0, 1]");
        const double r = 1.0 - t;
        // C uses B_{N-1}; C_1 = R_1^2 follows from B_0 = 1, C_0 = 0.
        k.C = r * r * k.B + t * t * k.C;
        k.A *= t * t;
        k.B *= (t - r) * (t - r);
        k.coherence *= t * (t - r);
        ++k.n;
    }
    return k;
}

CascadeCoefficients coefficients(const CascadeParams& params) {
    params.validate();
    return coefficients(params.transmittivities);
}

double closed_form_concurrence(const CascadeCoefficients& k) {
    return std::sqrt(k.A * k.B) / (std::ldexp(1.0, static_cast<int>(k.n)) * k.p_ii());
}

DensityMatrix closed_form_state(const CascadeCoefficients& k) {
    const double total = k.A + k.B + k.C;
    if (!(total > 0.0)) {
        throw ZeroProbabilityError("closed_form_state: every coefficient vanishes");
    }
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(1, 1) = k.A;
    m(1, 2) = m(2, 1) = -k.coherence;
    m(2, 2) = k.B;
    m(3, 3) = k.C;
    return DensityMatrix(m / total, {2, 2});
}

double filtered_probability(const CascadeCoefficients& k, double eps) {
    return eps * (2.0 * k.B + eps * k.C) / k.scale();
}

double filtered_concurrence(const CascadeCoefficients& k, double eps) {
    return 2.0 * k.B / (2.0 * k.B + eps * k.C);
}

PostSelectedState cascade_filter(const PostSelectedState& rho, const CascadeCoefficients& k, double eps,
                                 CascadeFilterRealization realization) {
    if (rho.rho.dim() != 4) throw DimensionError("cascade_filter: expected a two-qubit state");
    if (!(eps > 0.0 && eps <= 1.0)) throw ParameterError("cascade_filter: eps must lie in (0, 1]");
    if (!(k.A > 0.0)) {
        throw DegenerateCouplingError("cascade_filter: A_N = 0, the H-balancing factor is undefined");
    }
    // The sign of the coherence rides on Alice's H as a phase so the output
    // carries -eps B_N off the diagonal.
    const double sign = k.coherence < 0.0 ? -1.0 : 1.0;
    const double ratio = k.B / k.A;
    const double root_eps = std::sqrt(eps);

    Complex alice_h = sign * std::sqrt(ratio);
    Complex alice_v = root_eps;
    if (realization == CascadeFilterRealization::Physical && ratio > 1.0) {
        alice_h = sign;
        alice_v = root_eps / std::sqrt(ratio);
    }
    ComplexMatrix fa = ComplexMatrix::Zero(2, 2);
    fa(0, 0) = alice_h;
    fa(1, 1) = alice_v;
    ComplexMatrix fb = ComplexMatrix::Zero(2, 2);
    fb(0, 0) = 1.0;
    fb(1, 1) = root_eps;
    const ComplexMatrix kraus = kron(fa, fb);
    return post_select(kraus * rho.rho.mat() * kraus.adjoint(), {2, 2}, rho.success_prob);
}

ProtocolTrace simulate_cascade(const CascadeParams& params, double p, const std::vector<Pol>& outcomes,
                               CascadeFilterRealization realization) {
    params.validate();
    const auto& ts = params.transmittivities;
    if (!outcomes.empty() && outcomes.size() != ts.size()) {
        throw ParameterError("simulate_cascade: one outcome per coupling required");
    }
    const IndistinguishabilityModel model(p);

    ProtocolTrace trace;
    auto push = [&](std::string name, PostSelectedState state) {
        const double prior = trace.steps.empty() ? 1.0 : trace.steps.back().state.success_prob;
        const double step_prob = state.success_prob / prior;
        trace.cumulative_prob *= step_prob;
        trace.steps.push_back({std::move(name), std::move(state), step_prob});
    };

    PostSelectedState current{singlet(SingletPhase::Standard), 1.0};
    for (std::size_t i = 0; i < ts.size(); ++i) {
        auto coupled = couple_mixed_indistinguishability(current.rho, mixed_env(), CouplingParams(ts[i]), model);
        coupled.success_prob *= current.success_prob;
        const std::string stage = std::to_string(i + 1);
        push("coupling_" + stage, coupled);
        current = measure_env(coupled, outcomes.empty() ? Pol::H : outcomes[i]);
        push("measurement_" + stage, current);
    }
    push("filter", cascade_filter(current, coefficients(ts), params.eps, realization));
    return trace;
}

}  // namespace concentration
