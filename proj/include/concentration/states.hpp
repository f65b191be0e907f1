// states.hpp
// Named polarization states and structural classifiers.

#pragma once

#include "concentration/qmath.hpp"

namespace concentration {

/// Polarization basis label. H is basis index 0, V is index 1; two-qubit
/// registers are ordered HH, HV, VH, VV.
enum class Pol { H = 0, V = 1 };

constexpr std::size_t index_of(Pol p) noexcept { return static_cast<std::size_t>(p); }
constexpr Pol flipped(Pol p) noexcept { return p == Pol::H ? Pol::V : Pol::H; }
const char* to_string(Pol p) noexcept;

/// Relative phase convention of the shared singlet.
///   Imaginary: (|HV> - i|VH>)/sqrt(2)
///   Standard:  (|HV> -  |VH>)/sqrt(2)
/// The two differ by diag(1, i) on Alice's qubit.
enum class SingletPhase { Imaginary, Standard };

ComplexVector ket(Pol p);
ComplexVector singlet_ket(SingletPhase phase = SingletPhase::Imaginary);

/// The -i phase singlet projector. The protocol itself starts from
/// singlet_standard(); see ProtocolConfig::input_phase.
DensityMatrix singlet();
DensityMatrix singlet_standard();
DensityMatrix singlet(SingletPhase phase);

/// Completely unpolarized single photon, I/2.
DensityMatrix mixed_env();

/// Pure product state |a>|b>.
DensityMatrix basis_state(Pol a, Pol b);

/// q |Psi-><Psi-| + (1 - q) I/4.
DensityMatrix werner(double q, SingletPhase phase = SingletPhase::Imaginary);

/// Local phase diag(1, i) on Alice that maps the standard singlet onto the
/// -i one: U_A (x) I |Psi-_std> = |Psi-_im>.
ComplexMatrix singlet_phase_gate();

struct WernerDecomposition {
    double q = 0.0;          // singlet weight; in [-1/3, 1] for any valid state
    double residual = 0.0;   // Frobenius distance to the fitted Werner state
    SingletPhase phase = SingletPhase::Imaginary;
};

/// Least-squares Werner fit. Tries the -i phase singlet first and falls
/// back to the standard phase when the residual exceeds 1e-6, reporting the
/// better of the two.
WernerDecomposition classify_werner(const DensityMatrix& rho);

/// True iff every entry off the diagonal and anti-diagonal is below 1e-10.
bool is_x_form(const DensityMatrix& rho);

}  // namespace concentration
