// helpers.hpp
// Shared fixtures for the test binaries: random states and independent oracles.

#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "concentration/metrics.hpp"
#include "concentration/qmath.hpp"

namespace testing_support {

using namespace concentration;

inline ComplexMatrix random_matrix(std::mt19937_64& rng, Eigen::Index n) {
    std::normal_distribution<double> g;
    ComplexMatrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) m(r, c) = Complex(g(rng), g(rng));
    return m;
}

inline DensityMatrix random_state(std::mt19937_64& rng, std::size_t qubits) {
    const auto n = static_cast<Eigen::Index>(1) << qubits;
    const ComplexMatrix g = random_matrix(rng, n);
    return DensityMatrix::normalized(g * g.adjoint(), std::vector<std::size_t>(qubits, 2));
}

inline ComplexMatrix random_unitary(std::mt19937_64& rng, Eigen::Index n) {
    Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(rng, n));
    return qr.householderQ() * ComplexMatrix::Identity(n, n);
}

// Wootters concurrence straight from the non-Hermitian product rho * rho~.
inline double concurrence_oracle(const ComplexMatrix& rho) {
    ComplexMatrix yy = ComplexMatrix::Zero(4, 4);
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const ComplexMatrix tilde = yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<ComplexMatrix> es(rho * tilde);
    std::vector<double> l;
    for (Eigen::Index k = 0; k < 4; ++k) l.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(k).real())));
    std::sort(l.begin(), l.end(), std::greater<>());
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

}  // namespace testing_support
