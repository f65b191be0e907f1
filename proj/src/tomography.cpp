// tomography.cpp

#include "concentration/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "concentration/states.hpp"

namespace concentration {

namespace {

ComplexVector single_qubit_state(char label) {
    const double s = 1.0 / std::sqrt(2.0);
    ComplexVector v(2);
    switch (label) {
        case 'H': v << 1.0, 0.0; break;
        case 'V': v << 0.0, 1.0; break;
        case 'D': v << s, s; break;
        case 'A': v << s, -s; break;
        case 'R': v << s, Complex(0.0, s); break;
        case 'L': v << s, Complex(0.0, -s); break;
        default: throw ParameterError(std::string("tomography: unknown polarization label ") + label);
    }
    return v;
}

}  // namespace

TomographySettings TomographySettings::standard(std::uint64_t shots) {
    TomographySettings s;
    s.shots = shots;
    const std::string basis = "HVDARL";
    for (char a : basis) {
        for (char b : basis) {
            s.projectors.push_back(projector(kron(single_qubit_state(a), single_qubit_state(b))));
            s.labels.push_back(std::string{a, b});
        }
    }
    return s;
}

TomographyCounts simulate_counts(const DensityMatrix& rho, const TomographySettings& settings,
                                 std::uint64_t seed) {
    TomographyCounts out;
    out.shots = settings.shots;
    std::mt19937_64 rng(seed);
    for (const auto& proj : settings.projectors) {
        if (proj.rows() != static_cast<Eigen::Index>(rho.dim())) {
            throw DimensionError("simulate_counts: projector and state dimensions differ");
        }
        const double prob = std::max(0.0, (proj * rho.mat()).trace().real());
        if (settings.shots == 0) {
            out.values.push_back(prob);
        } else {
            const double mean = static_cast<double>(settings.shots) * prob;
            if (mean <= 0.0) {
                out.values.push_back(0.0);
            } else {
                std::poisson_distribution<std::uint64_t> draw(mean);
                out.values.push_back(static_cast<double>(draw(rng)));
            }
        }
    }
    return out;
}

ComplexMatrix linear_inversion(const TomographyCounts& counts, const TomographySettings& settings) {
    const auto n = static_cast<Eigen::Index>(settings.projectors.size());
    if (n == 0 || counts.values.size() != settings.projectors.size()) {
        throw DimensionError("linear_inversion: counts and settings disagree in size");
    }
    Eigen::MatrixXd gram(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index l = 0; l < n; ++l) {
            gram(k, l) = (settings.projectors[static_cast<std::size_t>(k)] *
                          settings.projectors[static_cast<std::size_t>(l)]).trace().real();
        }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
    lu.setThreshold(1e-10);
    const auto dim = settings.projectors.front().rows();
    if (lu.rank() != dim * dim) {
        throw ContractError("linear_inversion: settings are not informationally complete");
    }

    Eigen::VectorXd freq(n);
    const double scale = counts.shots == 0 ? 1.0 : static_cast<double>(counts.shots);
    for (Eigen::Index k = 0; k < n; ++k) freq(k) = counts.values[static_cast<std::size_t>(k)] / scale;

    // rho = sum_l c_l P_l with Gram c = frequencies; least squares when n > dim^2.
    const Eigen::VectorXd c = gram.completeOrthogonalDecomposition().solve(freq);
    ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index l = 0; l < n; ++l) rho += c(l) * settings.projectors[static_cast<std::size_t>(l)];
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const double tr = rho.trace().real();
    if (!(tr > 0.0)) throw ContractError("linear_inversion: estimate has non-positive trace");
    return rho / tr;
}

DensityMatrix project_to_density(const ComplexMatrix& hermitian, std::vector<std::size_t> dims) {
    const auto eig = herm_eigen(hermitian);
    const Eigen::Index n = eig.values.size();
    // Euclidean projection of the (descending) spectrum onto the simplex.
    double running = 0.0, theta = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        running += eig.values(k);
        const double t = (running - 1.0) / static_cast<double>(k + 1);
        if (eig.values(k) - t > 0.0) theta = t;
    }
    RealVector lambda(n);
    for (Eigen::Index k = 0; k < n; ++k) lambda(k) = std::max(eig.values(k) - theta, 0.0);
    const ComplexMatrix m = eig.vectors * lambda.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    return DensityMatrix::normalized(m, std::move(dims));
}

DensityMatrix reconstruct(const TomographyCounts& counts, const TomographySettings& settings) {
    const ComplexMatrix est = linear_inversion(counts, settings);
    std::vector<std::size_t> dims(static_cast<std::size_t>(std::log2(static_cast<double>(est.rows())) + 0.5), 2);
    return project_to_density(est, std::move(dims));
}

}  // namespace concentration
