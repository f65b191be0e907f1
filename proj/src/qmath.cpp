// qmath.cpp

#include "concentration/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace concentration {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        std::ostringstream os;
        os << what << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
        throw DimensionError(os.str());
    }
}

// Mixed-radix digits of `index` for the given subsystem dims (first subsystem
// is the most significant digit).
void split_index(std::size_t index, const std::vector<std::size_t>& dims,
                 std::vector<std::size_t>& digits) {
    digits.resize(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
        digits[k] = index % dims[k];
        index /= dims[k];
    }
}

}  // namespace

std::size_t product(const std::vector<std::size_t>& dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

DensityMatrix::DensityMatrix(ComplexMatrix mat, std::vector<std::size_t> subsystem_dims)
    : mat_(std::move(mat)), dims_(std::move(subsystem_dims)) {
    require_square(mat_, "DensityMatrix");
    if (dims_.empty()) {
        dims_.push_back(static_cast<std::size_t>(mat_.rows()));
    }
    if (product(dims_) != static_cast<std::size_t>(mat_.rows())) {
        throw DimensionError("DensityMatrix: subsystem dims do not multiply to the matrix size");
    }
    const Complex tr = mat_.trace();
    if (std::abs(tr - Complex{1.0, 0.0}) > kInvariantTol) {
        std::ostringstream os;
        os.precision(17);
        os << "DensityMatrix: trace " << tr.real() << "+" << tr.imag() << "i is not 1";
        throw ContractError(os.str());
    }
    if (!is_hermitian(mat_)) {
        throw ContractError("DensityMatrix: matrix is not Hermitian");
    }
    const auto eig = herm_eigen(mat_);
    if (eig.values(eig.values.size() - 1) < -kInvariantTol) {
        std::ostringstream os;
        os << "DensityMatrix: negative eigenvalue " << eig.values(eig.values.size() - 1);
        throw ContractError(os.str());
    }
}

DensityMatrix DensityMatrix::normalized(const ComplexMatrix& unnormalized,
                                        std::vector<std::size_t> subsystem_dims) {
    const double tr = unnormalized.trace().real();
    if (!(tr > 0.0)) {
        throw ZeroProbabilityError("DensityMatrix::normalized: operator has zero trace");
    }
    ComplexMatrix m = unnormalized / tr;
    // Symmetrize away round-off so the Hermiticity check measures real errors only.
    m = 0.5 * (m + m.adjoint()).eval();
    return DensityMatrix(std::move(m), std::move(subsystem_dims));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.size() == 0 || b.size() == 0) throw DimensionError("kron: empty operand");
    const Eigen::Index r = b.rows(), c = b.cols();
    ComplexMatrix out(a.rows() * r, a.cols() * c);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * r, j * c, r, c) = a(i, j) * b;
        }
    }
    return out;
}

DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b) {
    std::vector<std::size_t> dims = a.subsystem_dims();
    dims.insert(dims.end(), b.subsystem_dims().begin(), b.subsystem_dims().end());
    return DensityMatrix(kron(a.mat(), b.mat()), std::move(dims));
}

ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep) {
    require_square(m, "partial_trace");
    if (product(dims) != static_cast<std::size_t>(m.rows())) {
        throw DimensionError("partial_trace: subsystem dims do not match matrix size");
    }
    std::vector<bool> kept(dims.size(), false);
    for (std::size_t k : keep) {
        if (k >= dims.size() || kept[k]) {
            throw DimensionError("partial_trace: invalid or repeated subsystem index");
        }
        kept[k] = true;
    }
    if (!std::is_sorted(keep.begin(), keep.end())) {
        throw DimensionError("partial_trace: keep indices must be in register order");
    }

    std::vector<std::size_t> kept_dims;
    for (std::size_t k : keep) kept_dims.push_back(dims[k]);
    const std::size_t out_dim = product(kept_dims);
    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(out_dim),
                                            static_cast<Eigen::Index>(out_dim));

    const std::size_t n = static_cast<std::size_t>(m.rows());
    std::vector<std::size_t> ri, ci;
    for (std::size_t r = 0; r < n; ++r) {
        split_index(r, dims, ri);
        for (std::size_t c = 0; c < n; ++c) {
            split_index(c, dims, ci);
            bool diagonal_in_traced = true;
            for (std::size_t k = 0; k < dims.size(); ++k) {
                if (!kept[k] && ri[k] != ci[k]) {
                    diagonal_in_traced = false;
                    break;
                }
            }
            if (!diagonal_in_traced) continue;
            std::size_t orow = 0, ocol = 0;
            for (std::size_t k : keep) {
                orow = orow * dims[k] + ri[k];
                ocol = ocol * dims[k] + ci[k];
            }
            out(static_cast<Eigen::Index>(orow), static_cast<Eigen::Index>(ocol)) +=
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep) {
    if (keep.empty()) {
        throw DimensionError("partial_trace: keep set must be non-empty");
    }
    std::vector<std::size_t> kept_dims;
    for (std::size_t k : keep) {
        if (k >= rho.num_subsystems()) throw DimensionError("partial_trace: index out of range");
        kept_dims.push_back(rho.subsystem_dims()[k]);
    }
    return DensityMatrix::normalized(partial_trace(rho.mat(), rho.subsystem_dims(), keep),
                                     std::move(kept_dims));
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

HermEigen herm_eigen(const ComplexMatrix& m) {
    require_square(m, "herm_eigen");
    if (!is_hermitian(m)) {
        throw ContractError("herm_eigen: matrix is not Hermitian");
    }
    const ComplexMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw ContractError("herm_eigen: eigensolver did not converge");
    }
    // Eigen returns ascending order.
    const Eigen::Index n = h.rows();
    HermEigen out{RealVector(n), ComplexMatrix(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values(k) = solver.eigenvalues()(n - 1 - k);
        out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
    const auto eig = herm_eigen(m);
    RealVector roots(eig.values.size());
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
        const double v = eig.values(k);
        if (v < -kInvariantTol) {
            std::ostringstream os;
            os << "psd_sqrt: eigenvalue " << v << " below -" << kInvariantTol;
            throw ContractError(os.str());
        }
        roots(k) = std::sqrt(std::max(v, 0.0));
    }
    return eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix psd_sqrt(const DensityMatrix& rho) { return psd_sqrt(rho.mat()); }

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("frobenius_distance: shape mismatch");
    }
    return (a - b).norm();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("max_abs_diff: shape mismatch");
    }
    return (a - b).cwiseAbs().maxCoeff();
}

ComplexMatrix identity(std::size_t dim) {
    return ComplexMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

ComplexMatrix projector(const ComplexVector& ket) { return ket * ket.adjoint(); }

}  // namespace concentration
