#include <doctest.h>

#include <random>

#include "concentration/cascade.hpp"
#include "concentration/metrics.hpp"

using namespace concentration;

TEST_CASE("coefficients at N = 1 and N = 2") {
    const auto k1 = coefficients(std::vector<double>{0.4});
    CHECK(std::abs(k1.A - 0.16) <= 1e-15);
    CHECK(std::abs(k1.B - 0.04) <= 1e-15);
    CHECK(std::abs(k1.C - 0.36) <= 1e-15);
    CHECK(std::abs(k1.p_ii() - closed_form::p_ii(0.4)) <= 1e-15);

    const auto k2 = coefficients(std::vector<double>{0.4, 0.4});
    CHECK(std::abs(k2.A - 0.0256) <= 1e-15);
    CHECK(std::abs(k2.B - 0.0016) <= 1e-15);
    CHECK(std::abs(k2.C - 0.072) <= 1e-15);
}

TEST_CASE("recursion matches direct products") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 50; ++k) {
        std::vector<double> ts(1 + static_cast<std::size_t>(k % 6));
        for (auto& t : ts) t = u(rng);
        const auto c = coefficients(ts);
        double a = 1.0, b = 1.0;
        for (double t : ts) {
            a *= t * t;
            b *= (2 * t - 1) * (2 * t - 1);
        }
        CHECK(std::abs(c.A - a) <= 1e-14);
        CHECK(std::abs(c.B - b) <= 1e-14);
        CHECK(std::abs(c.coherence * c.coherence - a * b) <= 1e-14);
    }
}

TEST_CASE("closed-form state at N = 1 equals sigma_II") {
    for (double T : {0.2, 0.4, 0.8}) {
        const auto s = closed_form_state(coefficients(std::vector<double>{T}));
        CHECK(max_abs_diff(s.mat(), closed_form::sigma_ii(T).mat()) <= 1e-12);
    }
}

TEST_CASE("simulation matches closed form") {
    for (const auto& ts : {std::vector<double>{0.4, 0.4}, std::vector<double>{0.3, 0.7},
                           std::vector<double>(5, 0.1)}) {
        const auto tr = simulate_cascade(CascadeParams{ts, 1.0}, 1.0);
        const auto k = coefficients(ts);
        const auto& pre = tr.step("measurement_" + std::to_string(ts.size())).state;
        CHECK(max_abs_diff(pre.rho.mat(), closed_form_state(k).mat()) <= 1e-10);
        CHECK(std::abs(pre.success_prob - k.p_ii()) <= 1e-12);
        CHECK(std::abs(concurrence(pre.rho).value - closed_form_concurrence(k)) <= 1e-12);
    }
}

TEST_CASE("N = 1 cascade matches the single protocol") {
    const auto cas = simulate_cascade(CascadeParams{{0.4}, 1.0}, 1.0);
    const auto one = run_protocol(0.4, 1.0, 1.0, false);
    CHECK(max_abs_diff(cas.step("measurement_1").state.rho.mat(), one.step("measurement").state.rho.mat()) <= 1e-12);
}

TEST_CASE("a coupling at T = 1/2 kills the concurrence") {
    const auto k = coefficients(std::vector<double>{0.3, 0.5, 0.8});
    CHECK(closed_form_concurrence(k) == 0.0);
    const auto tr = simulate_cascade(CascadeParams{{0.3, 0.5, 0.8}, 1.0}, 1.0);
    CHECK(concurrence(tr.step("measurement_3").state.rho).value <= 1e-12);
}

TEST_CASE("cascade filter") {
    const auto k = coefficients(std::vector<double>{0.4});
    CHECK(std::abs(filtered_concurrence(k, 0.25) - 0.08 / 0.17) <= 1e-12);
    const auto pre = simulate_cascade(CascadeParams{{0.4}, 1.0}, 1.0).step("measurement_1").state;
    const auto out = cascade_filter(pre, k, 0.25);
    CHECK(std::abs(concurrence(out.rho).value - 0.08 / 0.17) <= 1e-12);
    CHECK(std::abs(out.success_prob - filtered_probability(k, 0.25)) <= 1e-12);

    // B > A: physical realization keeps the concurrence, scales the probability.
    const auto k1 = coefficients(std::vector<double>{0.1});
    const auto pre1 = simulate_cascade(CascadeParams{{0.1}, 1.0}, 1.0).step("measurement_1").state;
    const auto phys = cascade_filter(pre1, k1, 0.05);
    const auto lit = cascade_filter(pre1, k1, 0.05, CascadeFilterRealization::Literal);
    CHECK(std::abs(concurrence(phys.rho).value - filtered_concurrence(k1, 0.05)) <= 1e-12);
    CHECK(max_abs_diff(phys.rho.mat(), lit.rho.mat()) <= 1e-12);
    CHECK(std::abs(lit.success_prob - filtered_probability(k1, 0.05)) <= 1e-12);
    CHECK(std::abs(phys.success_prob - filtered_probability(k1, 0.05) * k1.A / k1.B) <= 1e-12);

    const auto k0 = coefficients(std::vector<double>{0.0});
    CHECK_THROWS_AS(cascade_filter(pre1, k0, 0.5), DegenerateCouplingError);
}

TEST_CASE("pre-filter concurrence falls with N at T = 0.1") {
    double prev = 2.0;
    for (std::size_t n = 1; n <= 6; ++n) {
        const double c = closed_form_concurrence(coefficients(std::vector<double>(n, 0.1)));
        CHECK(c < prev);
        prev = c;
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((CascadeParams{{}, 1.0}.validate()), ParameterError);
    CHECK_THROWS_AS((CascadeParams{{0.3}, 0.0}.validate()), ParameterError);
    CHECK_THROWS_AS((CascadeParams{{1.3}, 0.5}.validate()), ParameterError);
}
