// metrics.hpp
// Entanglement and distance measures for two-qubit states.

#pragma once

#include <array>

#include "concentration/qmath.hpp"

namespace concentration {

struct ConcurrenceReport {
    double value = 0.0;                  // max(0, l1 - l2 - l3 - l4), in [0, 1]
    std::array<double, 4> lambdas{};     // descending
};

/// Wootters concurrence. The lambdas are the square roots of the eigenvalues
/// of rho rho~, rho~ = (Y (x) Y) rho* (Y (x) Y), computed as the singular
/// values of W^T (Y (x) Y) W for rho = W W+.
ConcurrenceReport concurrence(const DensityMatrix& rho);

/// 2 max(0, |rho_14| - sqrt(rho_22 rho_33), |rho_23| - sqrt(rho_11 rho_44)).
/// Valid for X-form states only; used to cross-check the general path.
double x_state_concurrence(const DensityMatrix& rho);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Tr rho^2.
double purity(const DensityMatrix& rho);

/// Y (x) Y in the HH, HV, VH, VV basis.
ComplexMatrix spin_flip();

}  // namespace concentration
