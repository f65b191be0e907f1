// qmath.hpp
// Small dense complex linear algebra for few-qubit density matrices.

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace concentration {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Global tolerances. All matrices here are at most 8x8 and well conditioned.
inline constexpr double kInvariantTol = 1e-10;
inline constexpr double kReconstructionTol = 1e-9;

/// Shape mismatch: non-square operands, bad subsystem indices, wrong sizes.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A physical parameter outside its documented range (T, p, eps, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numeric contract was violated (non-Hermitian, not PSD, trace off).
class ContractError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A post-selection or measurement outcome that has zero probability.
class ZeroProbabilityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Density matrix over a register of subsystems.
///
/// The constructor enforces unit trace, Hermiticity and positive
/// semidefiniteness to kInvariantTol. Subsystem order is the Kronecker
/// order, so for (A, B, E) the basis index is a*4 + b*2 + e.
class DensityMatrix {
public:
    DensityMatrix(ComplexMatrix mat, std::vector<std::size_t> subsystem_dims);

    /// Normalizes `unnormalized` by its trace. Throws ZeroProbabilityError
    /// when the trace is not positive.
    static DensityMatrix normalized(const ComplexMatrix& unnormalized,
                                    std::vector<std::size_t> subsystem_dims);

    const ComplexMatrix& mat() const noexcept { return mat_; }
    const std::vector<std::size_t>& subsystem_dims() const noexcept { return dims_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(mat_.rows()); }
    std::size_t num_subsystems() const noexcept { return dims_.size(); }

    Complex operator()(std::size_t row, std::size_t col) const {
        return mat_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }

private:
    ComplexMatrix mat_;
    std::vector<std::size_t> dims_;
};

/// Eigenpairs of a Hermitian matrix, eigenvalues in descending order.
/// Column k of `vectors` belongs to `values[k]`.
struct HermEigen {
    RealVector values;
    ComplexMatrix vectors;
};

/// Kronecker product; operands may be any shape (kets included).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b);

/// Partial trace keeping the subsystems listed in `keep` (in register order).
/// Works on unnormalized operators as well.
ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep);

bool is_hermitian(const ComplexMatrix& m, double tol = kInvariantTol);

HermEigen herm_eigen(const ComplexMatrix& m);

/// Principal square root of a PSD matrix. Eigenvalues in [-kInvariantTol, 0)
/// are clamped to zero; anything more negative throws ContractError.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);
ComplexMatrix psd_sqrt(const DensityMatrix& rho);

/// Frobenius norm of the difference, the distance used by all tests.
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix identity(std::size_t dim);
ComplexMatrix projector(const ComplexVector& ket);

std::size_t product(const std::vector<std::size_t>& dims);

}  // namespace concentration
