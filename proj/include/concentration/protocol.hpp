// protocol.hpp
// Environment measurement, feed-forward and local filtration for a single
// coupling, plus the closed-form states the simulation is checked against.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "concentration/channel.hpp"
#include "concentration/coupling.hpp"
#include "concentration/states.hpp"

namespace concentration {

/// Filtration cannot balance the state: at T = 1/2 the coherent branch
/// vanishes by two-photon bunching.
class DegenerateCouplingError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class Party { Alice, Bob };
const char* to_string(Party p) noexcept;

struct MeasurementOutcome {
    Pol result;
    double probability;   // conditional on the incoming state
};

/// |axis> -> amplitude |axis> on one party. |amplitude| <= 1; a complex
/// amplitude is an attenuation followed by a phase shift on that axis.
struct LocalFilter {
    Pol axis;
    Complex amplitude;
};

struct FilterSpec {
    std::optional<LocalFilter> alice;
    std::optional<LocalFilter> bob;

    /// |V>_A -> sqrt(a_alice)|V>_A, |V>_B -> sqrt(a_bob)|V>_B.
    static FilterSpec raw_attenuation(double a_alice, double a_bob);

    /// The two-qubit Kraus operator F_A (x) F_B.
    ComplexMatrix kraus() const;
};

/// Applies a trace-decreasing local filter to a two-qubit state. The output
/// success probability is the input one times the surviving trace.
PostSelectedState apply_filter(const PostSelectedState& in, const FilterSpec& filter);

/// Conditional probabilities of finding E in H or V for an (A, B, E) state.
std::array<MeasurementOutcome, 2> environment_outcomes(const PostSelectedState& abe);

/// Projects E onto `result`, traces it out and renormalizes.
PostSelectedState measure_env(const PostSelectedState& abe, Pol result);

struct FeedForwardResult {
    ComplexMatrix unitary;          // 2x2, acts on Bob
    PostSelectedState corrected;    // U_B rho_V U_B+
    double fidelity;                // with the H-branch state
};

/// Finds the single-qubit unitary on B that brings the V-branch state closest
/// (in fidelity) to the H-branch state and applies it.
FeedForwardResult feed_forward(const PostSelectedState& v_branch, const PostSelectedState& h_branch);

/// Probability-weighted union of two branches with the same prior.
PostSelectedState merge_branches(const PostSelectedState& first, const PostSelectedState& second);

/// Which side of the T > |2T - 1| test a coupling falls on.
enum class RebalanceBranch {
    TransmissionDominant,   // T > |2T - 1|, i.e. 1/3 < T <= 1
    BunchingDominant,       // T < |2T - 1|
};

struct RebalancePlan {
    RebalanceBranch branch;
    double factor;          // |amplitude| of the attenuation, in [0, 1]
    FilterSpec filter;
};

/// Filter that equalizes the two populated central entries of sigma_II.
///   TransmissionDominant: |H>_A -> ((2T - 1)/T) |H>_A
///   BunchingDominant:     |V>_A -> (T/(2T - 1)) |V>_A
/// Throws DegenerateCouplingError at T = 1/2.
RebalancePlan rebalance_plan(const CouplingParams& params);
PostSelectedState rebalance_filter(const PostSelectedState& in, const CouplingParams& params);

/// |V> -> sqrt(eps) |V> on both Alice and Bob. eps must lie in (0, 1].
FilterSpec epsilon_filter_spec(double eps);
PostSelectedState epsilon_filter(const PostSelectedState& in, double eps);

struct ProtocolConfig {
    double T = 1.0;
    double p = 1.0;
    bool feed_forward = false;
    std::optional<double> eps;               // rebalance + eps filters when set
    std::optional<FilterSpec> raw_filter;    // replaces rebalance + eps when set
    SingletPhase input_phase = SingletPhase::Standard;
};

struct ProtocolStep {
    std::string name;
    PostSelectedState state;
    double step_prob;   // probability of this step given the previous one
};

struct ProtocolTrace {
    std::vector<ProtocolStep> steps;
    double cumulative_prob = 1.0;
    bool feed_forward_applied = false;
    std::optional<RebalancePlan> rebalance;
    std::optional<double> feed_forward_fidelity;

    const PostSelectedState& final_state() const { return steps.back().state; }
    /// Throws std::out_of_range for an unknown step name.
    const ProtocolStep& step(const std::string& name) const;
};

/// Coupling -> measurement of E (H branch; V branch corrected and merged when
/// feed-forward is on) -> optional filtration.
ProtocolTrace run_protocol(const ProtocolConfig& config);
ProtocolTrace run_protocol(double T, double eps, double p, bool feed_forward);

namespace closed_form {

/// (T^2 + (T - R)^2 + R^2) / 4
double p_ii(double T);
/// T |T - R| / (2 P_II)
double c_ii(double T);
/// Entries {T^2, -T(T - R), (T - R)^2, R^2} / (4 P_II) on HV, HV-VH, VH, VV.
DensityMatrix sigma_ii(double T);

struct AlphaDelta {
    double alpha;
    double delta;
};
/// alpha = T^2, delta = (TR/(R - T))^2 when T < |2T - 1|;
/// alpha = (2T - 1)^2, delta = R^2 otherwise.
AlphaDelta alpha_delta(double T);
double p_iii(double T, double eps);
double c_iii(double T, double eps);
DensityMatrix sigma_iii(double T, double eps);

}  // namespace closed_form

}  // namespace concentration
