// states.cpp

#include "concentration/states.hpp"

#include <algorithm>
#include <cmath>

namespace concentration {

namespace {

const Complex kI{0.0, 1.0};

void require_two_qubits(const DensityMatrix& rho, const char* what) {
    if (rho.dim() != 4) {
        throw DimensionError(std::string(what) + ": expected a two-qubit state");
    }
}

WernerDecomposition fit_werner(const DensityMatrix& rho, SingletPhase phase) {
    // rho - I/4 = q (S - I/4) in the least-squares sense.
    const ComplexMatrix quarter = identity(4) / 4.0;
    const ComplexMatrix direction = singlet(phase).mat() - quarter;
    const ComplexMatrix target = rho.mat() - quarter;
    const double q_free = (direction.adjoint() * target).trace().real() / direction.squaredNorm();
    WernerDecomposition out;
    out.q = q_free;
    out.phase = phase;
    out.residual = frobenius_distance(rho.mat(), quarter + out.q * direction);
    return out;
}

}  // namespace

const char* to_string(Pol p) noexcept { return p == Pol::H ? "H" : "V"; }

ComplexVector ket(Pol p) {
    ComplexVector v = ComplexVector::Zero(2);
    v(static_cast<Eigen::Index>(index_of(p))) = 1.0;
    return v;
}

ComplexVector singlet_ket(SingletPhase phase) {
    ComplexVector v = ComplexVector::Zero(4);
    const double s = 1.0 / std::sqrt(2.0);
    v(1) = s;
    v(2) = phase == SingletPhase::Imaginary ? -kI * s : Complex{-s, 0.0};
    return v;
}

DensityMatrix singlet(SingletPhase phase) {
    return DensityMatrix(projector(singlet_ket(phase)), {2, 2});
}

DensityMatrix singlet() { return singlet(SingletPhase::Imaginary); }
DensityMatrix singlet_standard() { return singlet(SingletPhase::Standard); }

DensityMatrix mixed_env() { return DensityMatrix(identity(2) / 2.0, {2}); }

DensityMatrix basis_state(Pol a, Pol b) {
    return DensityMatrix(projector(kron(ket(a), ket(b))), {2, 2});
}

DensityMatrix werner(double q, SingletPhase phase) {
    return DensityMatrix(q * singlet(phase).mat() + (1.0 - q) * identity(4) / 4.0, {2, 2});
}

ComplexMatrix singlet_phase_gate() {
    ComplexMatrix u = ComplexMatrix::Zero(2, 2);
    u(0, 0) = 1.0;
    u(1, 1) = kI;
    return u;
}

WernerDecomposition classify_werner(const DensityMatrix& rho) {
    require_two_qubits(rho, "classify_werner");
    auto best = fit_werner(rho, SingletPhase::Imaginary);
    if (best.residual > 1e-6) {
        auto alt = fit_werner(rho, SingletPhase::Standard);
        if (alt.residual < best.residual) best = alt;
    }
    return best;
}

bool is_x_form(const DensityMatrix& rho) {
    require_two_qubits(rho, "is_x_form");
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            if (r == c || r + c == 3) continue;
            if (std::abs(rho(r, c)) > kInvariantTol) return false;
        }
    }
    return true;
}

}  // namespace concentration
