// fock.hpp
// Brute-force second-quantized beam-splitter simulator.
//
// Modes are (port x polarization x tag): two spatial ports (B for the signal,
// E for the environment), two polarizations, and an internal tag that makes
// photons distinguishable when they carry different values. Photon numbers
// stay at or below two, which is all a single coupling needs.
//
// Phase convention for the creation operators:
//   b+ -> sqrt(T) b'+ + sqrt(R) e'+
//   e+ -> sqrt(T) e'+ - sqrt(R) b'+
// With this choice the one-photon-per-port amplitudes are
//   |p>_B |p>_E   -> (T - R) |p>_B |p>_E
//   |p>_B |p'>_E  ->  T |p>_B |p'>_E - R |p'>_B |p>_E
// i.e. T and R act as amplitudes on the post-selected two-photon states.

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "concentration/coupling.hpp"
#include "concentration/states.hpp"

namespace concentration::fock {

enum class Port { B = 0, E = 1 };
enum class Tag { Signal = 0, Env = 1 };

struct Mode {
    Port port;
    Pol pol;
    Tag tag;

    constexpr std::size_t index() const noexcept {
        return static_cast<std::size_t>(port) * 4 + index_of(pol) * 2 + static_cast<std::size_t>(tag);
    }
    static Mode from_index(std::size_t i);
};

inline constexpr std::size_t kNumModes = 8;
inline constexpr unsigned kMaxPhotons = 2;

/// Occupation numbers over the eight modes.
class FockState {
public:
    FockState() = default;

    unsigned count(Mode m) const noexcept { return occ_[m.index()]; }
    unsigned count(std::size_t i) const noexcept { return occ_[i]; }
    unsigned total() const noexcept;
    unsigned in_port(Port p) const noexcept;

    /// Returns a copy with one more photon in `m`. Throws DimensionError when
    /// the state would exceed kMaxPhotons.
    FockState with_added(Mode m) const;

    auto operator<=>(const FockState&) const = default;

private:
    std::array<std::uint8_t, kNumModes> occ_{};
};

using FockKet = std::map<FockState, Complex>;

/// a+_m acting on a superposition, with the usual sqrt(n + 1) factor.
FockKet create(const FockKet& ket, Mode m);

FockKet vacuum();

/// Applies the beam-splitter unitary. Photon number, polarization and tag
/// are untouched; only the port changes.
FockKet bs_unitary_apply(const FockKet& ket, const CouplingParams& params);

double norm_squared(const FockKet& ket);

/// Environment-photon tag relative to the signal photon.
enum class TagModel { Identical, Orthogonal };

/// Ket over Alice's qubit tensored with the optical modes: component a holds
/// the optical state that accompanies |a>_A.
struct JointKet {
    std::array<FockKet, 2> by_alice;
};

struct WeightedKet {
    double weight;
    JointKet ket;
};

using Ensemble = std::vector<WeightedKet>;

/// Pure-state ensemble for rho_AB (x) rho_E: B's polarization goes on a signal
/// photon in port B, E's on a photon in port E carrying the tag set by `tags`.
/// Mixed inputs are decomposed through their eigenvectors.
Ensemble prepare_input(const DensityMatrix& rho_ab, const DensityMatrix& rho_e, TagModel tags);

Ensemble apply_beam_splitter(const Ensemble& in, const CouplingParams& params);

/// Keeps exactly one photon in port B and one in port E, traces the tags,
/// and returns the (A, B, E) polarization state. The success probability is
/// the unnormalized trace. Returns nullopt for a zero-measure post-selection.
std::optional<PostSelectedState> postselect_one_per_mode(const Ensemble& out);

/// prepare_input -> apply_beam_splitter -> postselect_one_per_mode.
std::optional<PostSelectedState> simulate_coupling(const DensityMatrix& rho_ab,
                                                   const DensityMatrix& rho_e,
                                                   const CouplingParams& params,
                                                   TagModel tags);

/// Probability that two H photons, one per input port, leave in different
/// ports. `overlap` is the weight of the identical-tag component.
double coincidence_probability(double overlap, const CouplingParams& params);

struct HomScanResult {
    std::vector<double> delays;           // in units of the coherence time
    std::vector<double> coincidence_rate;
    double visibility = 0.0;              // (max - min) / max over the scan
};

/// Delay grid from -8 to 8 coherence times in steps of 0.25.
std::vector<double> default_delays();

/// Hong-Ou-Mandel delay scan. The tag overlap at delay tau is
/// overlap * exp(-tau^2), so the dip bottom sits at tau = 0.
HomScanResult hom_scan(double overlap, const CouplingParams& params,
                       const std::vector<double>& delays = default_delays());

/// Inverts visibility = 2 T R p / (T^2 + R^2) for the overlap p.
double estimate_overlap(const HomScanResult& scan, const CouplingParams& params);

}  // namespace concentration::fock
