// cascade.hpp
// N sequential couplings with fresh unpolarized environment photons, each
// followed by an H measurement of the environment, and one joint filtration
// at the end.

#pragma once

#include <cstddef>
#include <vector>

#include "concentration/protocol.hpp"

namespace concentration {

struct CascadeParams {
    std::vector<double> transmittivities;   // T_1 .. T_N, repeats allowed
    double eps = 1.0;                       // in (0, 1]

    /// Throws ParameterError for N = 0 or out-of-range values.
    void validate() const;
};

/// Recursion coefficients after N couplings:
///   A_N = prod T_i^2,  B_N = prod (T_i - R_i)^2,
///   C_N = R_N^2 B_{N-1} + T_N^2 C_{N-1},  C_1 = R_1^2.
/// `coherence` is the signed prod T_i (T_i - R_i); its square is A_N B_N.
struct CascadeCoefficients {
    std::size_t n = 0;
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;
    double coherence = 0.0;

    /// (A + B + C) / 2^(N+1)
    double p_ii() const;
    /// 2^(N+1)
    double scale() const;
};

CascadeCoefficients coefficients(const std::vector<double>& transmittivities);
CascadeCoefficients coefficients(const CascadeParams& params);

/// sqrt(A_N B_N) / (2^N P^(N))
double closed_form_concurrence(const CascadeCoefficients& k);

/// X-form state with entries A_N, -coherence, B_N, C_N over 2^(N+1) P^(N).
/// Throws ZeroProbabilityError when A_N = B_N = C_N = 0.
DensityMatrix closed_form_state(const CascadeCoefficients& k);

/// eps (2 B_N + eps C_N) / 2^(N+1)
double filtered_probability(const CascadeCoefficients& k, double eps);
/// 2 B_N / (2 B_N + eps C_N)
double filtered_concurrence(const CascadeCoefficients& k, double eps);

/// How the balancing factor sqrt(B_N / A_N) on Alice's H is realized.
enum class CascadeFilterRealization {
    /// Amplitudes stay in [0, 1]. When B_N > A_N the balance is reached by
    /// attenuating Alice's V by sqrt(A_N / B_N) instead; the normalized
    /// output and its concurrence are unchanged, the probability is scaled
    /// by A_N / B_N.
    Physical,
    /// |H>_A -> sqrt(B_N / A_N) |H>_A even when the factor exceeds 1.
    /// Reproduces filtered_probability exactly, but is not a passive filter.
    Literal,
};

/// |V>_{A,B} -> sqrt(eps) |V>, plus the balancing factor on Alice.
/// Throws DegenerateCouplingError when A_N = 0.
PostSelectedState cascade_filter(const PostSelectedState& rho, const CascadeCoefficients& k, double eps,
                                 CascadeFilterRealization realization = CascadeFilterRealization::Physical);

/// Runs couple -> measure_env per stage from the standard-phase singlet,
/// then cascade_filter. `outcomes` selects the environment result per stage
/// (empty means H everywhere). Step names: coupling_i, measurement_i, filter.
ProtocolTrace simulate_cascade(const CascadeParams& params, double p,
                               const std::vector<Pol>& outcomes = {},
                               CascadeFilterRealization realization = CascadeFilterRealization::Physical);

}  // namespace concentration
