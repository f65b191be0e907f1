// metrics.cpp

#include "concentration/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace concentration {

namespace {

// Eigenvalues of rho at or below this are round-off and dropped from the
// factor W. Keeping them would put sqrt(1e-17) ~ 3e-9 noise into the lambdas.
constexpr double kRankFloor = 1e-14;

}  // namespace

ComplexMatrix spin_flip() {
    ComplexMatrix y = ComplexMatrix::Zero(2, 2);
    y(0, 1) = Complex{0.0, -1.0};
    y(1, 0) = Complex{0.0, 1.0};
    return kron(y, y);
}

ConcurrenceReport concurrence(const DensityMatrix& rho) {
    if (rho.dim() != 4) throw DimensionError("concurrence: expected a two-qubit state");
    const auto eig = herm_eigen(rho.mat());
    if (eig.values(3) < -kInvariantTol) throw ContractError("concurrence: state is not positive semidefinite");

    Eigen::Index rank = 0;
    while (rank < 4 && eig.values(rank) > kRankFloor) ++rank;
    ConcurrenceReport out;
    if (rank == 0) return out;

    // rho = W W+, and the lambdas are the singular values of W^T (Y (x) Y) W.
    ComplexMatrix w = eig.vectors.leftCols(rank);
    for (Eigen::Index k = 0; k < rank; ++k) w.col(k) *= std::sqrt(eig.values(k));
    const ComplexMatrix tau = w.transpose() * spin_flip() * w;
    const RealVector sv = Eigen::JacobiSVD<ComplexMatrix>(tau).singularValues();
    for (Eigen::Index k = 0; k < sv.size(); ++k) out.lambdas[static_cast<std::size_t>(k)] = sv(k);

    const auto& l = out.lambdas;
    out.value = std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
    return out;
}

double x_state_concurrence(const DensityMatrix& rho) {
    if (rho.dim() != 4) throw DimensionError("x_state_concurrence: expected a two-qubit state");
    const double p11 = rho(0, 0).real(), p22 = rho(1, 1).real();
    const double p33 = rho(2, 2).real(), p44 = rho(3, 3).real();
    const double a = std::abs(rho(0, 3)) - std::sqrt(std::max(0.0, p22 * p33));
    const double b = std::abs(rho(1, 2)) - std::sqrt(std::max(0.0, p11 * p44));
    return 2.0 * std::max({0.0, a, b});
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw DimensionError("fidelity: dimension mismatch");
    const ComplexMatrix root = psd_sqrt(rho);
    const ComplexMatrix inner = root * sigma.mat() * root;
    const double tr = psd_sqrt(0.5 * (inner + inner.adjoint())).trace().real();
    return std::clamp(tr * tr, 0.0, 1.0);
}

double purity(const DensityMatrix& rho) {
    return (rho.mat() * rho.mat()).trace().real();
}

}  // namespace concentration
