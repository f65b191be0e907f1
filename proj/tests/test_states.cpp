#include <doctest.h>

#include "concentration/channel.hpp"
#include "concentration/metrics.hpp"
#include "concentration/states.hpp"

using namespace concentration;

TEST_CASE("singlet entries") {
    const auto s = singlet();
    CHECK(std::abs(s(1, 1) - Complex(0.5, 0)) <= 1e-15);
    CHECK(std::abs(s(2, 2) - Complex(0.5, 0)) <= 1e-15);
    // (|HV> - i|VH>)/sqrt2: the HV,VH entry is 1 * conj(-i) / 2 = +i/2.
    CHECK(std::abs(s(1, 2) - Complex(0, 0.5)) <= 1e-15);
    CHECK(std::abs(s(2, 1) - Complex(0, -0.5)) <= 1e-15);
    CHECK(concurrence(s).value == doctest::Approx(1.0).epsilon(1e-12));

    const auto st = singlet_standard();
    CHECK(std::abs(st(1, 2) - Complex(-0.5, 0)) <= 1e-15);
    CHECK(concurrence(st).value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("phase gate maps the standard singlet onto the -i variant") {
    const ComplexMatrix u = kron(singlet_phase_gate(), identity(2));
    CHECK(max_abs_diff(u * singlet_standard().mat() * u.adjoint(), singlet().mat()) <= 1e-15);
}

TEST_CASE("mixed environment") {
    const auto e = mixed_env();
    CHECK(std::abs(e.mat().trace() - Complex(1, 0)) <= 1e-15);
    CHECK(purity(e) == doctest::Approx(0.5));
    CHECK(concurrence(kron(e, e)).value <= 1e-12);
}

TEST_CASE("classify_werner") {
    const auto mixed = DensityMatrix(identity(4) / 4.0, {2, 2});
    auto w = classify_werner(mixed);
    CHECK(w.q <= 1e-12);
    CHECK(w.residual <= 1e-12);

    w = classify_werner(singlet());
    CHECK(std::abs(w.q - 1.0) <= 1e-12);
    CHECK(w.residual <= 1e-12);

    for (double q : {0.0, 0.25, 0.5, 1.0}) {
        CHECK(classify_werner(werner(q)).q == doctest::Approx(q).epsilon(1e-14));
        const auto ws = classify_werner(werner(q, SingletPhase::Standard));
        CHECK(std::abs(ws.q - q) <= 1e-12);
        CHECK(ws.residual <= 1e-12);
    }

    // The A-B marginal after coupling with an unpolarized photon is Werner.
    const auto out = couple(singlet(), mixed_env(), CouplingParams(0.6));
    const auto fit = classify_werner(partial_trace(out.rho, {0, 1}));
    CHECK(fit.residual <= 1e-10);
    CHECK(fit.q > 1.0 / 3.0);

    const auto out3 = couple(singlet(), mixed_env(), CouplingParams(0.3));
    CHECK(classify_werner(partial_trace(out3.rho, {0, 1})).residual <= 1e-10);
}

TEST_CASE("is_x_form") {
    CHECK(is_x_form(DensityMatrix(identity(4) / 4.0, {2, 2})));
    CHECK(is_x_form(singlet()));
    ComplexVector d(2);
    d << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    CHECK_FALSE(is_x_form(kron(DensityMatrix(projector(d), {2}), DensityMatrix(projector(ket(Pol::H)), {2}))));
}

TEST_CASE("basis states") {
    const auto hv = basis_state(Pol::H, Pol::V);
    CHECK(hv(1, 1) == Complex(1, 0));
    CHECK(purity(hv) == doctest::Approx(1.0));
    CHECK(index_of(flipped(Pol::H)) == 1);
}
