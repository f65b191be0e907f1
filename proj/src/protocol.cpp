// protocol.cpp

#include "concentration/protocol.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "concentration/metrics.hpp"

namespace concentration {

namespace {

void require_two_qubits(const PostSelectedState& s, const char* what) {
    if (s.rho.dim() != 4) throw DimensionError(std::string(what) + ": expected a two-qubit state");
}

ComplexMatrix local_operator(const std::optional<LocalFilter>& f) {
    ComplexMatrix m = identity(2);
    if (f) {
        if (std::abs(f->amplitude) > 1.0 + 1e-15) {
            throw ParameterError("LocalFilter: |amplitude| must not exceed 1");
        }
        m(static_cast<Eigen::Index>(index_of(f->axis)), static_cast<Eigen::Index>(index_of(f->axis))) =
            f->amplitude;
    }
    return m;
}

// Single-qubit unitary from three Euler-type angles.
ComplexMatrix su2(double theta, double phi, double lambda) {
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    ComplexMatrix u(2, 2);
    u(0, 0) = c;
    u(0, 1) = -std::polar(s, lambda);
    u(1, 0) = std::polar(s, phi);
    u(1, 1) = std::polar(c, phi + lambda);
    return u;
}

double fidelity_with_root(const ComplexMatrix& root_target, const ComplexMatrix& sigma) {
    const ComplexMatrix inner = root_target * sigma * root_target;
    const double tr = psd_sqrt(0.5 * (inner + inner.adjoint())).trace().real();
    return tr * tr;
}

bool is_half(double T) { return std::abs(T - 0.5) < 1e-12; }

}  // namespace

const char* to_string(Party p) noexcept { return p == Party::Alice ? "alice" : "bob"; }

FilterSpec FilterSpec::raw_attenuation(double a_alice, double a_bob) {
    if (!(a_alice >= 0.0 && a_alice <= 1.0 && a_bob >= 0.0 && a_bob <= 1.0)) {
        throw ParameterError("raw_attenuation: attenuations must lie in [0, 1]");
    }
    return FilterSpec{LocalFilter{Pol::V, std::sqrt(a_alice)}, LocalFilter{Pol::V, std::sqrt(a_bob)}};
}

ComplexMatrix FilterSpec::kraus() const { return kron(local_operator(alice), local_operator(bob)); }

PostSelectedState apply_filter(const PostSelectedState& in, const FilterSpec& filter) {
    require_two_qubits(in, "apply_filter");
    const ComplexMatrix k = filter.kraus();
    return post_select(k * in.rho.mat() * k.adjoint(), {2, 2}, in.success_prob);
}

std::array<MeasurementOutcome, 2> environment_outcomes(const PostSelectedState& abe) {
    if (abe.rho.dim() != 8) throw DimensionError("environment_outcomes: expected an (A, B, E) state");
    const ComplexMatrix e = partial_trace(abe.rho.mat(), {2, 2, 2}, {2});
    return {MeasurementOutcome{Pol::H, e(0, 0).real()}, MeasurementOutcome{Pol::V, e(1, 1).real()}};
}

PostSelectedState measure_env(const PostSelectedState& abe, Pol result) {
    if (abe.rho.dim() != 8) throw DimensionError("measure_env: expected an (A, B, E) state");
    const ComplexMatrix proj = kron(identity(4), projector(ket(result)));
    const ComplexMatrix conditioned = partial_trace(proj * abe.rho.mat() * proj, {2, 2, 2}, {0, 1});
    if (!(conditioned.trace().real() > 0.0)) {
        throw ZeroProbabilityError(std::string("measure_env: outcome ") + to_string(result) +
                                   " has zero probability");
    }
    return post_select(conditioned, {2, 2}, abe.success_prob);
}

FeedForwardResult feed_forward(const PostSelectedState& v_branch, const PostSelectedState& h_branch) {
    require_two_qubits(v_branch, "feed_forward");
    require_two_qubits(h_branch, "feed_forward");
    const ComplexMatrix root = psd_sqrt(h_branch.rho);
    auto score = [&](double th, double ph, double la) {
        const ComplexMatrix u = kron(identity(2), su2(th, ph, la));
        return fidelity_with_root(root, u * v_branch.rho.mat() * u.adjoint());
    };

    constexpr double pi = std::numbers::pi;
    std::array<double, 3> best{0.0, 0.0, 0.0};
    double best_f = score(0.0, 0.0, 0.0);
    for (int i = 0; i <= 8; ++i) {
        for (int j = 0; j < 12; ++j) {
            for (int k = 0; k < 12; ++k) {
                const std::array<double, 3> x{pi * i / 8.0, 2.0 * pi * j / 12.0, 2.0 * pi * k / 12.0};
                const double f = score(x[0], x[1], x[2]);
                if (f > best_f) {
                    best_f = f;
                    best = x;
                }
            }
        }
    }
    // Compass search refinement.
    for (double step = pi / 16.0; step > 1e-10; step *= 0.5) {
        bool improved = true;
        while (improved) {
            improved = false;
            for (std::size_t d = 0; d < 3; ++d) {
                for (double sgn : {1.0, -1.0}) {
                    auto x = best;
                    x[d] += sgn * step;
                    const double f = score(x[0], x[1], x[2]);
                    if (f > best_f + 1e-15) {
                        best_f = f;
                        best = x;
                        improved = true;
                    }
                }
            }
        }
    }

    const ComplexMatrix u_b = su2(best[0], best[1], best[2]);
    const ComplexMatrix u = kron(identity(2), u_b);
    PostSelectedState corrected{DensityMatrix::normalized(u * v_branch.rho.mat() * u.adjoint(), {2, 2}),
                                v_branch.success_prob};
    return FeedForwardResult{u_b, std::move(corrected), std::min(best_f, 1.0)};
}

PostSelectedState merge_branches(const PostSelectedState& first, const PostSelectedState& second) {
    const ComplexMatrix sum = first.success_prob * first.rho.mat() + second.success_prob * second.rho.mat();
    return post_select(sum, first.rho.subsystem_dims());
}

RebalancePlan rebalance_plan(const CouplingParams& params) {
    const double t = params.T();
    if (is_half(t)) {
        throw DegenerateCouplingError("rebalance: T = 1/2 leaves no coherence to rebalance");
    }
    const double d = 2.0 * t - 1.0;
    RebalancePlan plan;
    if (t > std::abs(d)) {
        // sigma_II has HV = T^2 > VH = (2T - 1)^2: shrink Alice's H.
        const double f = d / t;
        plan.branch = RebalanceBranch::TransmissionDominant;
        plan.factor = std::abs(f);
        plan.filter.alice = LocalFilter{Pol::H, f};
    } else {
        // VH = (2T - 1)^2 >= HV = T^2: shrink Alice's V.
        const double f = t / d;
        plan.branch = RebalanceBranch::BunchingDominant;
        plan.factor = std::abs(f);
        plan.filter.alice = LocalFilter{Pol::V, f};
    }
    return plan;
}

PostSelectedState rebalance_filter(const PostSelectedState& in, const CouplingParams& params) {
    return apply_filter(in, rebalance_plan(params).filter);
}

FilterSpec epsilon_filter_spec(double eps) {
    if (!(eps > 0.0 && eps <= 1.0)) {
        throw ParameterError("epsilon filter: eps must lie in (0, 1]");
    }
    const double a = std::sqrt(eps);
    return FilterSpec{LocalFilter{Pol::V, a}, LocalFilter{Pol::V, a}};
}

PostSelectedState epsilon_filter(const PostSelectedState& in, double eps) {
    return apply_filter(in, epsilon_filter_spec(eps));
}

const ProtocolStep& ProtocolTrace::step(const std::string& name) const {
    for (const auto& s : steps) {
        if (s.name == name) return s;
    }
    throw std::out_of_range("ProtocolTrace: no step named " + name);
}

ProtocolTrace run_protocol(const ProtocolConfig& config) {
    const CouplingParams params(config.T);
    const IndistinguishabilityModel model(config.p);

    ProtocolTrace trace;
    auto push = [&](std::string name, PostSelectedState state) {
        const double prior = trace.steps.empty() ? 1.0 : trace.steps.back().state.success_prob;
        const double step_prob = state.success_prob / prior;
        trace.cumulative_prob *= step_prob;
        trace.steps.push_back({std::move(name), std::move(state), step_prob});
    };

    const auto coupled =
        couple_mixed_indistinguishability(singlet(config.input_phase), mixed_env(), params, model);
    push("coupling", coupled);

    PostSelectedState measured = measure_env(coupled, Pol::H);
    if (config.feed_forward) {
        const auto v_branch = measure_env(coupled, Pol::V);
        const auto ff = feed_forward(v_branch, measured);
        measured = merge_branches(measured, ff.corrected);
        trace.feed_forward_applied = true;
        trace.feed_forward_fidelity = ff.fidelity;
    }
    push("measurement", measured);

    if (config.raw_filter) {
        push("raw_filter", apply_filter(trace.final_state(), *config.raw_filter));
    } else if (config.eps) {
        trace.rebalance = rebalance_plan(params);
        push("rebalance", apply_filter(trace.final_state(), trace.rebalance->filter));
        push("epsilon", epsilon_filter(trace.final_state(), *config.eps));
    }
    return trace;
}

ProtocolTrace run_protocol(double T, double eps, double p, bool feed_forward) {
    ProtocolConfig config;
    config.T = T;
    config.eps = eps;
    config.p = p;
    config.feed_forward = feed_forward;
    return run_protocol(config);
}

namespace closed_form {

double p_ii(double T) {
    const double R = 1.0 - T;
    return (T * T + (T - R) * (T - R) + R * R) / 4.0;
}

double c_ii(double T) {
    const double R = 1.0 - T;
    return T * std::abs(T - R) / (2.0 * p_ii(T));
}

DensityMatrix sigma_ii(double T) {
    const double R = 1.0 - T;
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(1, 1) = T * T;
    m(1, 2) = m(2, 1) = -T * (T - R);
    m(2, 2) = (T - R) * (T - R);
    m(3, 3) = R * R;
    return DensityMatrix(m / (4.0 * p_ii(T)), {2, 2});
}

AlphaDelta alpha_delta(double T) {
    const double R = 1.0 - T;
    if (T < std::abs(2.0 * T - 1.0)) {
        const double x = T * R / (R - T);
        return {T * T, x * x};
    }
    return {(2.0 * T - 1.0) * (2.0 * T - 1.0), R * R};
}

double p_iii(double T, double eps) {
    const auto [a, d] = alpha_delta(T);
    return (2.0 * eps * a + eps * eps * d) / 4.0;
}

double c_iii(double T, double eps) {
    const auto [a, d] = alpha_delta(T);
    return 2.0 * eps * a / (2.0 * eps * a + eps * eps * d);
}

DensityMatrix sigma_iii(double T, double eps) {
    const auto [a, d] = alpha_delta(T);
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(1, 1) = m(2, 2) = eps * a;
    m(1, 2) = m(2, 1) = -eps * a;
    m(3, 3) = eps * eps * d;
    return DensityMatrix(m / (4.0 * p_iii(T, eps)), {2, 2});
}

}  // namespace closed_form

}  // namespace concentration
