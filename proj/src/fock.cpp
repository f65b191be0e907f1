// fock.cpp

#include "concentration/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace concentration::fock {

namespace {

// Skip eigencomponents this small when unravelling mixed inputs.
constexpr double kNegligibleWeight = 1e-15;

void add_to(FockKet& acc, const FockKet& term, Complex scale) {
    for (const auto& [state, amp] : term) {
        acc[state] += scale * amp;
    }
}

double factorial(unsigned n) {
    double f = 1.0;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

void require_unit_interval(double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw ParameterError(std::string(what) + " must lie in [0, 1]");
    }
}

}  // namespace

Mode Mode::from_index(std::size_t i) {
    if (i >= kNumModes) throw DimensionError("Mode::from_index: index out of range");
    return Mode{static_cast<Port>(i / 4), static_cast<Pol>((i / 2) % 2), static_cast<Tag>(i % 2)};
}

unsigned FockState::total() const noexcept {
    return std::accumulate(occ_.begin(), occ_.end(), 0u);
}

unsigned FockState::in_port(Port p) const noexcept {
    const std::size_t base = static_cast<std::size_t>(p) * 4;
    return static_cast<unsigned>(occ_[base] + occ_[base + 1] + occ_[base + 2] + occ_[base + 3]);
}

FockState FockState::with_added(Mode m) const {
    if (total() >= kMaxPhotons) {
        throw DimensionError("FockState: photon number limit exceeded");
    }
    FockState out = *this;
    ++out.occ_[m.index()];
    return out;
}

FockKet vacuum() { return FockKet{{FockState{}, Complex{1.0, 0.0}}}; }

FockKet create(const FockKet& ket, Mode m) {
    FockKet out;
    for (const auto& [state, amp] : ket) {
        const double bosonic = std::sqrt(static_cast<double>(state.count(m) + 1));
        out[state.with_added(m)] += bosonic * amp;
    }
    return out;
}

double norm_squared(const FockKet& ket) {
    double n = 0.0;
    for (const auto& [state, amp] : ket) n += std::norm(amp);
    return n;
}

FockKet bs_unitary_apply(const FockKet& ket, const CouplingParams& params) {
    const double t = std::sqrt(params.T());
    const double r = std::sqrt(params.R());

    FockKet out;
    for (const auto& [state, amp] : ket) {
        // |n> = prod_m (a+_m)^{n_m} / sqrt(n_m!) |0>; transform each a+ in turn.
        FockKet partial = vacuum();
        double norm = 1.0;
        for (std::size_t i = 0; i < kNumModes; ++i) {
            const unsigned n = state.count(i);
            norm *= factorial(n);
            const Mode m = Mode::from_index(i);
            const Mode to_b{Port::B, m.pol, m.tag};
            const Mode to_e{Port::E, m.pol, m.tag};
            for (unsigned k = 0; k < n; ++k) {
                FockKet next;
                if (m.port == Port::B) {
                    add_to(next, create(partial, to_b), t);
                    add_to(next, create(partial, to_e), r);
                } else {
                    add_to(next, create(partial, to_e), t);
                    add_to(next, create(partial, to_b), -r);
                }
                partial = std::move(next);
            }
        }
        add_to(out, partial, amp / std::sqrt(norm));
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == Complex{}; });
    return out;
}

Ensemble prepare_input(const DensityMatrix& rho_ab, const DensityMatrix& rho_e, TagModel tags) {
    if (rho_ab.dim() != 4 || rho_e.dim() != 2) {
        throw DimensionError("prepare_input: expected a two-qubit input and a one-qubit environment");
    }
    const Tag env_tag = tags == TagModel::Identical ? Tag::Signal : Tag::Env;
    const auto ab = herm_eigen(rho_ab.mat());
    const auto e = herm_eigen(rho_e.mat());

    Ensemble out;
    for (Eigen::Index i = 0; i < ab.values.size(); ++i) {
        if (ab.values(i) <= kNegligibleWeight) continue;
        for (Eigen::Index j = 0; j < e.values.size(); ++j) {
            if (e.values(j) <= kNegligibleWeight) continue;
            JointKet ket;
            for (Pol a : {Pol::H, Pol::V}) {
                FockKet& target = ket.by_alice[index_of(a)];
                for (Pol b : {Pol::H, Pol::V}) {
                    const Complex cb = ab.vectors(static_cast<Eigen::Index>(index_of(a) * 2 + index_of(b)), i);
                    if (cb == Complex{}) continue;
                    for (Pol pe : {Pol::H, Pol::V}) {
                        const Complex ce = e.vectors(static_cast<Eigen::Index>(index_of(pe)), j);
                        if (ce == Complex{}) continue;
                        const FockKet two = create(create(vacuum(), Mode{Port::B, b, Tag::Signal}),
                                                   Mode{Port::E, pe, env_tag});
                        add_to(target, two, cb * ce);
                    }
                }
            }
            out.push_back({ab.values(i) * e.values(j), std::move(ket)});
        }
    }
    return out;
}

Ensemble apply_beam_splitter(const Ensemble& in, const CouplingParams& params) {
    Ensemble out;
    out.reserve(in.size());
    for (const auto& [w, ket] : in) {
        JointKet next;
        for (std::size_t a = 0; a < 2; ++a) {
            next.by_alice[a] = bs_unitary_apply(ket.by_alice[a], params);
        }
        out.push_back({w, std::move(next)});
    }
    return out;
}

std::optional<PostSelectedState> postselect_one_per_mode(const Ensemble& out) {
    // Amplitudes indexed by (tag_B, tag_E) -> 8-dim (A, B, E) polarization vector.
    ComplexMatrix rho = ComplexMatrix::Zero(8, 8);
    for (const auto& [w, ket] : out) {
        std::array<ComplexVector, 4> by_tags;
        for (auto& v : by_tags) v = ComplexVector::Zero(8);
        for (std::size_t a = 0; a < 2; ++a) {
            for (const auto& [state, amp] : ket.by_alice[a]) {
                if (state.total() != 2 || state.in_port(Port::B) != 1 || state.in_port(Port::E) != 1) {
                    continue;
                }
                std::optional<Mode> mb, me;
                for (std::size_t i = 0; i < kNumModes; ++i) {
                    if (state.count(i) == 0) continue;
                    const Mode m = Mode::from_index(i);
                    (m.port == Port::B ? mb : me) = m;
                }
                const std::size_t tags = static_cast<std::size_t>(mb->tag) * 2 + static_cast<std::size_t>(me->tag);
                const std::size_t pol = a * 4 + index_of(mb->pol) * 2 + index_of(me->pol);
                by_tags[tags](static_cast<Eigen::Index>(pol)) += amp;
            }
        }
        for (const auto& v : by_tags) rho += w * (v * v.adjoint());
    }
    const double prob = rho.trace().real();
    if (!(prob > 0.0)) return std::nullopt;
    return post_select(rho, {2, 2, 2});
}

std::optional<PostSelectedState> simulate_coupling(const DensityMatrix& rho_ab,
                                                   const DensityMatrix& rho_e,
                                                   const CouplingParams& params,
                                                   TagModel tags) {
    return postselect_one_per_mode(apply_beam_splitter(prepare_input(rho_ab, rho_e, tags), params));
}

double coincidence_probability(double overlap, const CouplingParams& params) {
    require_unit_interval(overlap, "coincidence_probability: overlap");
    auto coincidences = [&](Tag env_tag) {
        const FockKet in = create(create(vacuum(), Mode{Port::B, Pol::H, Tag::Signal}),
                                  Mode{Port::E, Pol::H, env_tag});
        double p = 0.0;
        for (const auto& [state, amp] : bs_unitary_apply(in, params)) {
            if (state.in_port(Port::B) == 1 && state.in_port(Port::E) == 1) p += std::norm(amp);
        }
        return p;
    };
    return overlap * coincidences(Tag::Signal) + (1.0 - overlap) * coincidences(Tag::Env);
}

std::vector<double> default_delays() {
    std::vector<double> d;
    for (int k = -32; k <= 32; ++k) d.push_back(0.25 * k);
    return d;
}

HomScanResult hom_scan(double overlap, const CouplingParams& params, const std::vector<double>& delays) {
    require_unit_interval(overlap, "hom_scan: overlap");
    if (delays.empty()) throw DimensionError("hom_scan: empty delay grid");
    HomScanResult out;
    out.delays = delays;
    for (double tau : delays) {
        out.coincidence_rate.push_back(coincidence_probability(overlap * std::exp(-tau * tau), params));
    }
    const auto [lo, hi] = std::minmax_element(out.coincidence_rate.begin(), out.coincidence_rate.end());
    out.visibility = *hi > 0.0 ? (*hi - *lo) / *hi : 0.0;
    return out;
}

double estimate_overlap(const HomScanResult& scan, const CouplingParams& params) {
    const double t = params.T(), r = params.R();
    if (t * r <= 0.0) {
        throw ContractError("estimate_overlap: no two-photon interference at T = 0 or T = 1");
    }
    return scan.visibility * (t * t + r * r) / (2.0 * t * r);
}

}  // namespace concentration::fock
