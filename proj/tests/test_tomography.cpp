#include <doctest.h>

#include <random>

#include "concentration/metrics.hpp"
#include "concentration/protocol.hpp"
#include "concentration/tomography.hpp"
#include "helpers.hpp"

using namespace concentration;

TEST_CASE("Born probabilities") {
    const auto s = TomographySettings::standard();
    const auto c = simulate_counts(singlet(), s);
    REQUIRE(s.labels.size() == 36);
    for (std::size_t k = 0; k < 36; ++k) {
        if (s.labels[k] == "HV") CHECK(std::abs(c.values[k] - 0.5) <= 1e-15);
        if (s.labels[k] == "HH") CHECK(std::abs(c.values[k]) <= 1e-15);
    }
    const auto s3 = closed_form::sigma_iii(0.4, 0.25);
    const auto c3 = simulate_counts(s3, s);
    for (std::size_t k = 0; k < 36; ++k) {
        if (s.labels[k] == "HV") CHECK(std::abs(c3.values[k] - s3(1, 1).real()) <= 1e-15);
        if (s.labels[k] == "VV") CHECK(std::abs(c3.values[k] - s3(3, 3).real()) <= 1e-15);
    }
}

TEST_CASE("ideal reconstruction is exact") {
    CHECK(std::abs(fidelity(reconstruct(simulate_counts(singlet(), TomographySettings::standard()),
                                        TomographySettings::standard()),
                            singlet()) -
                   1.0) <= 1e-9);
    std::mt19937_64 rng(51);
    for (int k = 0; k < 20; ++k) {
        const auto rho = testing_support::random_state(rng, 2);
        const auto rec = reconstruct(simulate_counts(rho, TomographySettings::standard()), TomographySettings::standard());
        CHECK(max_abs_diff(rec.mat(), rho.mat()) <= 1e-9);
    }
    for (double T : {0.2, 0.4, 0.7}) {
        const auto s = closed_form::sigma_ii(T);
        CHECK(fidelity(reconstruct(simulate_counts(s, TomographySettings::standard()), TomographySettings::standard()), s) >=
              0.999999);
    }
}

TEST_CASE("seeded shot noise") {
    const auto settings = TomographySettings::standard(10000);
    const auto s3 = closed_form::sigma_iii(0.4, 0.25);
    const auto a = simulate_counts(s3, settings, 7);
    const auto b = simulate_counts(s3, settings, 7);
    CHECK(a.values == b.values);
    CHECK(fidelity(reconstruct(a, settings), s3) >= 0.98);
}

TEST_CASE("incomplete settings are rejected") {
    // Z-basis projectors alone cannot see any coherence.
    auto s = TomographySettings::standard();
    TomographySettings zz;
    for (std::size_t k = 0; k < s.labels.size(); ++k) {
        if (s.labels[k].find_first_not_of("HV") == std::string::npos) {
            zz.projectors.push_back(s.projectors[k]);
            zz.labels.push_back(s.labels[k]);
        }
    }
    s = zz;
    CHECK_THROWS_AS(reconstruct(simulate_counts(singlet(), s), s), ContractError);
}

TEST_CASE("projection onto states") {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = 1.1;
    m(1, 1) = -0.1;
    const auto p = project_to_density(m, {2, 2});
    CHECK(std::abs(p(0, 0).real() - 1.0) <= 1e-12);
    CHECK(std::abs(p(1, 1).real()) <= 1e-12);
}
