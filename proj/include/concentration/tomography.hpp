// tomography.hpp
// Simulated two-qubit state tomography: product-projector statistics and
// linear-inversion reconstruction with a projection back onto valid states.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "concentration/qmath.hpp"

namespace concentration {

struct TomographySettings {
    std::vector<ComplexMatrix> projectors;   // two-qubit product projectors
    std::vector<std::string> labels;         // e.g. "HD"
    std::uint64_t shots = 0;                 // 0 = exact Born probabilities

    /// {H, V, D, A, R, L} on each qubit: the 36 product projectors of the three
    /// Pauli bases. Overcomplete, which roughly halves the shot-noise error of
    /// the minimal 16-projector set.
    static TomographySettings standard(std::uint64_t shots = 0);
};

struct TomographyCounts {
    std::vector<double> values;   // probabilities (ideal) or raw counts
    std::uint64_t shots = 0;
};

/// Born probabilities, or Poisson counts with mean shots * probability drawn
/// from a mt19937_64 seeded with `seed`.
TomographyCounts simulate_counts(const DensityMatrix& rho, const TomographySettings& settings,
                                 std::uint64_t seed = 0);

/// Linear inversion through the projectors' Gram matrix, then the nearest
/// unit-trace PSD matrix in Frobenius norm. Throws ContractError when the
/// settings are not informationally complete.
DensityMatrix reconstruct(const TomographyCounts& counts, const TomographySettings& settings);

/// Unconstrained linear-inversion estimate (Hermitian, trace one, maybe not PSD).
ComplexMatrix linear_inversion(const TomographyCounts& counts, const TomographySettings& settings);

/// Nearest unit-trace PSD matrix to a Hermitian matrix in Frobenius norm.
DensityMatrix project_to_density(const ComplexMatrix& hermitian, std::vector<std::size_t> dims);

}  // namespace concentration
