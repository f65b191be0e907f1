#include <doctest.h>

#include <random>

#include "concentration/qmath.hpp"
#include "concentration/metrics.hpp"
#include "concentration/states.hpp"
#include "helpers.hpp"

using namespace concentration;

namespace {
ComplexMatrix diag2(double a, double b) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}
}  // namespace

TEST_CASE("kron of identities and basis projectors") {
    CHECK(max_abs_diff(kron(identity(2), identity(2)), identity(4)) == 0.0);
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(1, 1) = 1.0;
    CHECK(max_abs_diff(kron(diag2(1, 0), diag2(0, 1)), expected) == 0.0);
}

TEST_CASE("Y (x) Y has anti-diagonal (-1, 1, 1, -1)") {
    ComplexMatrix y(2, 2);
    y << 0.0, Complex(0, -1), Complex(0, 1), 0.0;
    const ComplexMatrix yy = kron(y, y);
    CHECK(yy(0, 3) == Complex(-1, 0));
    CHECK(yy(1, 2) == Complex(1, 0));
    CHECK(yy(2, 1) == Complex(1, 0));
    CHECK(yy(3, 0) == Complex(-1, 0));
    CHECK(max_abs_diff(yy, spin_flip()) == 0.0);
}

TEST_CASE("kron is associative") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 10; ++k) {
        const auto a = testing_support::random_matrix(rng, 2);
        const auto b = testing_support::random_matrix(rng, 3);
        const auto c = testing_support::random_matrix(rng, 2);
        CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) <= 1e-12);
    }
}

TEST_CASE("partial trace of product and entangled states") {
    const auto abe = kron(singlet(), mixed_env());
    CHECK(max_abs_diff(partial_trace(abe, {0, 1}).mat(), singlet().mat()) <= 1e-15);
    CHECK(max_abs_diff(partial_trace(singlet(), {0}).mat(), 0.5 * identity(2)) <= 1e-15);
    CHECK(max_abs_diff(partial_trace(singlet(), {1}).mat(), 0.5 * identity(2)) <= 1e-15);
    CHECK(max_abs_diff(partial_trace(abe, {2}).mat(), 0.5 * identity(2)) <= 1e-15);
}

TEST_CASE("partial trace preserves trace and rejects bad indices") {
    std::mt19937_64 rng(3);
    const auto rho = testing_support::random_state(rng, 3);
    for (std::vector<std::size_t> keep : {std::vector<std::size_t>{0}, {1}, {2}, {0, 2}, {1, 2}, {0, 1, 2}}) {
        CHECK(std::abs(partial_trace(rho, keep).mat().trace() - Complex(1, 0)) <= 1e-12);
    }
    CHECK(max_abs_diff(partial_trace(rho, {0, 1, 2}).mat(), rho.mat()) <= 1e-15);
    CHECK_THROWS_AS(partial_trace(rho, {3}), DimensionError);
    CHECK_THROWS_AS(partial_trace(rho, {}), DimensionError);
}

TEST_CASE("partial trace matches an explicit index sum") {
    std::mt19937_64 rng(5);
    const auto rho = testing_support::random_state(rng, 3);
    ComplexMatrix ae = ComplexMatrix::Zero(4, 4);
    for (int a = 0; a < 2; ++a)
        for (int e = 0; e < 2; ++e)
            for (int a2 = 0; a2 < 2; ++a2)
                for (int e2 = 0; e2 < 2; ++e2)
                    for (int b = 0; b < 2; ++b) ae(a * 2 + e, a2 * 2 + e2) += rho.mat()(a * 4 + b * 2 + e, a2 * 4 + b * 2 + e2);
    CHECK(max_abs_diff(partial_trace(rho, {0, 2}).mat(), ae) <= 1e-15);
}

TEST_CASE("herm_eigen") {
    const auto e1 = herm_eigen(diag2(1, 3));
    CHECK(e1.values(0) == doctest::Approx(3.0));
    CHECK(e1.values(1) == doctest::Approx(1.0));

    ComplexMatrix x(2, 2);
    x << 0.0, 1.0, 1.0, 0.0;
    const auto e2 = herm_eigen(x);
    CHECK(e2.values(0) == doctest::Approx(1.0));
    CHECK(e2.values(1) == doctest::Approx(-1.0));
    CHECK(std::abs(std::abs(e2.vectors(0, 0)) - 1.0 / std::sqrt(2.0)) <= 1e-12);
    const ComplexMatrix rebuilt = e2.vectors * e2.values.cast<Complex>().asDiagonal() * e2.vectors.adjoint();
    CHECK(max_abs_diff(rebuilt, x) <= 1e-12);

    for (double q : {0.0, 0.2, 0.7, 1.0}) {
        const auto ev = herm_eigen(werner(q).mat()).values;
        CHECK(std::abs(ev(0) - (1 + 3 * q) / 4) <= 1e-12);
        for (int k = 1; k < 4; ++k) CHECK(std::abs(ev(k) - (1 - q) / 4) <= 1e-12);
    }

    ComplexMatrix bad(2, 2);
    bad << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(herm_eigen(bad), ContractError);
}

TEST_CASE("psd_sqrt") {
    CHECK(max_abs_diff(psd_sqrt(ComplexMatrix(0.25 * identity(4))), 0.5 * identity(4)) <= 1e-12);
    CHECK(max_abs_diff(psd_sqrt(singlet()), singlet().mat()) <= 1e-12);
    CHECK(max_abs_diff(psd_sqrt(ComplexMatrix(diag2(4, 1) / 5.0)), diag2(2, 1) / std::sqrt(5.0)) <= 1e-12);

    std::mt19937_64 rng(8);
    const auto rho = testing_support::random_state(rng, 2);
    const ComplexMatrix s = psd_sqrt(rho);
    CHECK(max_abs_diff(s * s, rho.mat()) <= 1e-12);

    ComplexMatrix slightly = diag2(1.0, -5e-11);
    CHECK_NOTHROW(psd_sqrt(slightly));
    CHECK_THROWS_AS(psd_sqrt(ComplexMatrix(diag2(1.0, -1e-6))), ContractError);
}

TEST_CASE("DensityMatrix validation") {
    CHECK_THROWS_AS(DensityMatrix(diag2(0.6, 0.6), {2}), ContractError);
    CHECK_THROWS_AS(DensityMatrix(diag2(1.2, -0.2), {2}), ContractError);
    CHECK_THROWS_AS(DensityMatrix(identity(4) / 4.0, {2}), DimensionError);
    CHECK_THROWS_AS(DensityMatrix::normalized(ComplexMatrix::Zero(2, 2), {2}), ZeroProbabilityError);
    CHECK_NOTHROW(DensityMatrix(diag2(0.5, 0.5), {2}));
}
