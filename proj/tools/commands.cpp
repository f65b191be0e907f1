// commands.cpp

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "concentration/cascade.hpp"
#include "concentration/fock.hpp"
#include "concentration/metrics.hpp"
#include "concentration/protocol.hpp"
#include "concentration/tomography.hpp"

namespace concentration::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Concurrence values at or below this count as zero for threshold reports.
constexpr double kPositive = 1e-12;

double round12(double x) {
    if (!std::isfinite(x)) return x;
    return std::strtod(format_number(x).c_str(), nullptr);
}

json cell_to_json(const Cell& c) {
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    const double x = std::get<double>(c);
    if (!std::isfinite(x)) return nullptr;
    return round12(x);
}

std::string cell_to_csv(const Cell& c) {
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    return format_number(std::get<double>(c));
}

std::string eps_label(double eps) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", eps);
    return buf;
}

void require_nonempty(const std::vector<double>& v, const char* what) {
    if (v.empty()) throw ParameterError(std::string(what) + ": grid must not be empty");
}

// Runs `f`, mapping degenerate or zero-probability outcomes to NaN.
template <typename F>
double or_nan(F&& f) {
    try {
        return f();
    } catch (const DegenerateCouplingError&) {
        return kNaN;
    } catch (const ZeroProbabilityError&) {
        return kNaN;
    }
}

json state_to_json(const DensityMatrix& rho) {
    json re = json::array(), im = json::array();
    for (std::size_t r = 0; r < rho.dim(); ++r) {
        json rr = json::array(), ii = json::array();
        for (std::size_t c = 0; c < rho.dim(); ++c) {
            rr.push_back(round12(rho(r, c).real()));
            ii.push_back(round12(rho(r, c).imag()));
        }
        re.push_back(rr);
        im.push_back(ii);
    }
    return json{{"real", re}, {"imag", im}};
}

}  // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) x = 0.0;   // drop the sign of -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void write_table(const Table& table, Format format, std::ostream& out, std::ostream& notes) {
    if (format == Format::Csv) {
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            out << (i ? "," : "") << table.columns[i];
        }
        out << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                out << (i ? "," : "") << cell_to_csv(row[i]);
            }
            out << '\n';
        }
        if (!table.summary.empty()) notes << "summary: " << table.summary.dump() << '\n';
        if (!table.reference.empty()) notes << "reference: " << table.reference.dump() << '\n';
        return;
    }
    json doc;
    doc["command"] = table.command;
    doc["columns"] = table.columns;
    json rows = json::array();
    for (const auto& row : table.rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = cell_to_json(row[i]);
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    doc["summary"] = table.summary;
    doc["reference"] = table.reference;
    out << doc.dump(2) << '\n';
}

std::vector<double> make_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo)) throw ParameterError("grid: need step > 0 and hi >= lo");
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    std::vector<double> g;
    for (long k = 0; k <= n; ++k) g.push_back(round12(lo + static_cast<double>(k) * step));
    return g;
}

Table cmd_sweep_coupling(const SweepCouplingConfig& config) {
    require_nonempty(config.t_grid, "sweep-coupling");
    const IndistinguishabilityModel model(config.p);
    Table t;
    t.command = "sweep-coupling";
    t.columns = {"T", "C_AB", "C_AE", "C_BE", "P_success"};

    std::optional<double> ab_onset, ae_vanish, be_argmax;
    double be_max = -1.0;
    bool ae_seen_positive = false;
    for (double T : config.t_grid) {
        const auto s = couple_mixed_indistinguishability(singlet_standard(), mixed_env(), CouplingParams(T), model);
        const double c_ab = concurrence(partial_trace(s.rho, {0, 1})).value;
        const double c_ae = concurrence(partial_trace(s.rho, {0, 2})).value;
        const double c_be = concurrence(partial_trace(s.rho, {1, 2})).value;
        t.rows.push_back({T, c_ab, c_ae, c_be, s.success_prob});

        if (!ab_onset && c_ab > kPositive) ab_onset = T;
        if (c_ae > kPositive) ae_seen_positive = true;
        if (ae_seen_positive && !ae_vanish && c_ae <= kPositive) ae_vanish = T;
        if (c_be > be_max + 1e-15) {
            be_max = c_be;
            be_argmax = T;
        }
    }
    auto opt = [](const std::optional<double>& x) { return x ? json(round12(*x)) : json(nullptr); };
    const double step = config.t_grid.size() > 1 ? config.t_grid[1] - config.t_grid[0] : 0.0;
    t.summary = json{{"grid_step", round12(step)},
                     {"C_AB_first_positive_T", opt(ab_onset)},
                     {"C_AE_first_zero_T", opt(ae_vanish)},
                     {"C_BE_argmax_T", opt(be_argmax)},
                     {"C_AB_threshold_analytic", round12(1.0 / std::sqrt(3.0))},
                     {"C_AE_threshold_analytic", round12(1.0 - 1.0 / std::sqrt(3.0))}};
    return t;
}

Table cmd_protocol(const ProtocolCommandConfig& config) {
    require_nonempty(config.t_grid, "protocol");
    for (double e : config.eps) {
        if (!(e > 0.0 && e <= 1.0)) throw ParameterError("protocol: eps must lie in (0, 1]");
    }
    std::optional<FilterSpec> raw;
    if (config.raw_filter) raw = FilterSpec::raw_attenuation(config.raw_filter->first, config.raw_filter->second);
    IndistinguishabilityModel{config.p};

    Table t;
    t.command = "protocol";
    t.columns = {"T", "C_coupled", "P_coupled", "C_measured", "P_measured"};
    for (double e : config.eps) {
        t.columns.push_back("C_filtered_eps" + eps_label(e));
        t.columns.push_back("P_filtered_eps" + eps_label(e));
    }
    if (raw) {
        t.columns.push_back("C_raw_filter");
        t.columns.push_back("P_raw_filter");
    }

    for (double T : config.t_grid) {
        ProtocolConfig pc;
        pc.T = T;
        pc.p = config.p;
        pc.feed_forward = config.feed_forward;
        const auto trace = run_protocol(pc);
        const auto& coupled = trace.step("coupling").state;
        const auto& measured = trace.step("measurement").state;

        std::vector<Cell> row{T, concurrence(partial_trace(coupled.rho, {0, 1})).value, coupled.success_prob,
                              concurrence(measured.rho).value, measured.success_prob};
        for (double e : config.eps) {
            std::optional<PostSelectedState> out;
            try {
                out = epsilon_filter(rebalance_filter(measured, CouplingParams(T)), e);
            } catch (const DegenerateCouplingError&) {
            } catch (const ZeroProbabilityError&) {
            }
            row.push_back(out ? concurrence(out->rho).value : kNaN);
            row.push_back(out ? out->success_prob : kNaN);
        }
        if (raw) {
            std::optional<PostSelectedState> out;
            try {
                out = apply_filter(measured, *raw);
            } catch (const ZeroProbabilityError&) {
            }
            row.push_back(out ? concurrence(out->rho).value : kNaN);
            row.push_back(out ? out->success_prob : kNaN);
        }
        t.rows.push_back(std::move(row));
    }

    t.summary = json{{"p", round12(config.p)}, {"feed_forward", config.feed_forward}};
    t.reference = json{{"T", 0.4},
                       {"p_from_hom", "0.85 +/- 0.05"},
                       {"C_II_model", 0.22},
                       {"C_II_measured", "0.15 +/- 0.03"},
                       {"F_II_measured", "0.96 +/- 0.01"},
                       {"raw_filter", json{{"A_A", 0.12}, {"A_B", 0.30}}},
                       {"C_III_model", 0.47},
                       {"C_III_measured", "0.50 +/- 0.10"},
                       {"F_III_measured", "0.92 +/- 0.04"}};
    return t;
}

json protocol_traces(const ProtocolCommandConfig& config) {
    json out = json::array();
    for (double T : config.t_grid) {
        ProtocolConfig pc;
        pc.T = T;
        pc.p = config.p;
        pc.feed_forward = config.feed_forward;
        if (config.raw_filter) {
            pc.raw_filter = FilterSpec::raw_attenuation(config.raw_filter->first, config.raw_filter->second);
        } else if (!config.eps.empty()) {
            pc.eps = config.eps.front();
        }
        json entry{{"T", round12(T)}};
        try {
            const auto trace = run_protocol(pc);
            json steps = json::array();
            for (const auto& s : trace.steps) {
                json step{{"name", s.name},
                          {"step_prob", round12(s.step_prob)},
                          {"success_prob", round12(s.state.success_prob)},
                          {"dims", s.state.rho.subsystem_dims()},
                          {"rho", state_to_json(s.state.rho)}};
                if (s.state.rho.dim() == 4) step["concurrence"] = round12(concurrence(s.state.rho).value);
                steps.push_back(std::move(step));
            }
            entry["steps"] = std::move(steps);
            entry["cumulative_prob"] = round12(trace.cumulative_prob);
            entry["feed_forward_applied"] = trace.feed_forward_applied;
            if (trace.feed_forward_fidelity) entry["feed_forward_fidelity"] = round12(*trace.feed_forward_fidelity);
            if (trace.rebalance) {
                entry["rebalance"] = json{
                    {"branch", trace.rebalance->branch == RebalanceBranch::TransmissionDominant
                                   ? "transmission_dominant"
                                   : "bunching_dominant"},
                    {"factor", round12(trace.rebalance->factor)}};
            }
        } catch (const DegenerateCouplingError& e) {
            entry["error"] = e.what();
        } catch (const ZeroProbabilityError& e) {
            entry["error"] = e.what();
        }
        out.push_back(std::move(entry));
    }
    return out;
}

Table cmd_cascade(const CascadeCommandConfig& config) {
    require_nonempty(config.transmittivities, "cascade");
    for (double e : config.eps) {
        if (!(e > 0.0 && e <= 1.0)) throw ParameterError("cascade: eps must lie in (0, 1]");
    }
    Table t;
    t.command = "cascade";
    t.columns = {"N", "C_closed", "C_simulated", "P_II_closed", "P_II_simulated"};
    for (double e : config.eps) {
        const std::string s = eps_label(e);
        t.columns.push_back("C_III_eps" + s);
        t.columns.push_back("P_III_closed_eps" + s);
        t.columns.push_back("P_III_simulated_eps" + s);
    }

    for (std::size_t n = 1; n <= config.transmittivities.size(); ++n) {
        const std::vector<double> ts(config.transmittivities.begin(),
                                     config.transmittivities.begin() + static_cast<long>(n));
        const auto k = coefficients(ts);
        CascadeParams cp{ts, config.eps.empty() ? 1.0 : config.eps.front()};
        std::optional<ProtocolTrace> pre;
        try {
            pre = simulate_cascade(cp, config.p);
        } catch (const DegenerateCouplingError&) {
        } catch (const ZeroProbabilityError&) {
        }
        const std::string last = "measurement_" + std::to_string(n);
        std::vector<Cell> row{static_cast<double>(n), or_nan([&] { return closed_form_concurrence(k); }),
                              pre ? concurrence(pre->step(last).state.rho).value : kNaN, k.p_ii(),
                              pre ? pre->step(last).state.success_prob : kNaN};
        for (double e : config.eps) {
            std::optional<PostSelectedState> out;
            if (pre) {
                try {
                    out = cascade_filter(pre->step(last).state, k, e);
                } catch (const DegenerateCouplingError&) {
                } catch (const ZeroProbabilityError&) {
                }
            }
            row.push_back(out ? concurrence(out->rho).value : kNaN);
            row.push_back(filtered_probability(k, e));
            row.push_back(out ? out->success_prob : kNaN);
        }
        t.rows.push_back(std::move(row));
    }
    t.summary = json{{"p", round12(config.p)}, {"transmittivities", config.transmittivities}};
    return t;
}

Table cmd_hom(const HomCommandConfig& config) {
    require_nonempty(config.overlaps, "hom");
    const CouplingParams params(config.T);
    Table t;
    t.command = "hom";
    t.columns = {"overlap", "T", "coincidence_min", "coincidence_max", "visibility", "p_recovered"};
    for (double ov : config.overlaps) {
        const auto scan = fock::hom_scan(ov, params);
        const auto [lo, hi] = std::minmax_element(scan.coincidence_rate.begin(), scan.coincidence_rate.end());
        t.rows.push_back({ov, config.T, *lo, *hi, scan.visibility, fock::estimate_overlap(scan, params)});
    }
    t.reference = json{{"p_from_hom", "0.85 +/- 0.05"}, {"T", 0.5}};
    return t;
}

Table cmd_tomo(const TomoCommandConfig& config) {
    std::optional<DensityMatrix> truth;
    if (config.state == "singlet") {
        truth = singlet();
    } else if (config.state == "sigma_I") {
        truth = partial_trace(couple(singlet_standard(), mixed_env(), CouplingParams(config.T)).rho, {0, 1});
    } else if (config.state == "sigma_II") {
        truth = closed_form::sigma_ii(CouplingParams(config.T).T());
    } else if (config.state == "sigma_III") {
        if (!(config.eps > 0.0 && config.eps <= 1.0)) throw ParameterError("tomo: eps must lie in (0, 1]");
        truth = closed_form::sigma_iii(CouplingParams(config.T).T(), config.eps);
    } else {
        throw ParameterError("tomo: unknown state '" + config.state + "'");
    }

    const auto settings = TomographySettings::standard(config.shots);
    const auto counts = simulate_counts(*truth, settings, config.seed);
    const auto rec = reconstruct(counts, settings);

    Table t;
    t.command = "tomo";
    t.columns = {"state", "T", "eps", "shots", "seed", "fidelity", "purity_true", "purity_reconstructed",
                 "C_true", "C_reconstructed"};
    t.rows.push_back({config.state, config.T, config.eps, static_cast<double>(config.shots),
                      static_cast<double>(config.seed), fidelity(*truth, rec), purity(*truth), purity(rec),
                      concurrence(*truth).value, concurrence(rec).value});
    return t;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Entanglement concentration simulator"};
    app.set_config("--config", "", "TOML file: global keys at top level, one [section] per command");
    app.require_subcommand(1);
    app.fallthrough();   // global options may follow the command name

    std::uint64_t seed = 0;
    std::string out_path;
    std::string format_name = "csv";
    app.add_option("--seed", seed, "Seed for every random draw");
    app.add_option("--out", out_path, "Output file (default: stdout)");
    app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"csv", "json"}));

    auto add_grid = [](CLI::App* sub, double& lo, double& hi, double& step, std::vector<double>& list) {
        sub->add_option("--t-min", lo, "Smallest transmittivity");
        sub->add_option("--t-max", hi, "Largest transmittivity");
        sub->add_option("--t-step", step, "Grid step");
        sub->add_option("--t-grid", list, "Explicit transmittivities (overrides min/max/step)")->delimiter(',');
    };

    // sweep-coupling
    SweepCouplingConfig sweep;
    double s_lo = 0.0, s_hi = 1.0, s_step = 0.001;
    std::vector<double> s_list;
    auto* sweep_cmd = app.add_subcommand("sweep-coupling", "Pairwise concurrences after one coupling");
    add_grid(sweep_cmd, s_lo, s_hi, s_step, s_list);
    sweep_cmd->add_option("--p", sweep.p, "Degree of indistinguishability");

    // protocol
    ProtocolCommandConfig proto;
    proto.eps = {0.05, 0.25};
    double p_lo = 0.0, p_hi = 1.0, p_step = 0.01;
    std::vector<double> p_list;
    std::vector<double> raw;
    std::string trace_path;
    auto* proto_cmd = app.add_subcommand("protocol", "Coupling, measurement and filtration per T");
    add_grid(proto_cmd, p_lo, p_hi, p_step, p_list);
    proto_cmd->add_option("--eps", proto.eps, "Filtration strengths")->delimiter(',');
    proto_cmd->add_option("--p", proto.p, "Degree of indistinguishability");
    proto_cmd->add_flag("--feed-forward", proto.feed_forward, "Correct and keep the V branch");
    proto_cmd->add_option("--raw-filter", raw, "Raw V attenuations A_A,A_B")->delimiter(',')->expected(2);
    proto_cmd->add_option("--trace", trace_path, "Write full protocol traces as JSON");

    // cascade
    CascadeCommandConfig casc;
    casc.eps = {0.01, 0.05, 0.25};
    double c_t = 0.1;
    std::size_t c_n = 6;
    std::vector<double> c_list;
    auto* casc_cmd = app.add_subcommand("cascade", "N sequential couplings with final filtration");
    casc_cmd->add_option("--t", c_t, "Transmittivity of every coupling");
    casc_cmd->add_option("--n-max", c_n, "Largest number of couplings")->check(CLI::PositiveNumber);
    casc_cmd->add_option("--t-list", c_list, "Explicit T_1..T_N (overrides --t/--n-max)")->delimiter(',');
    casc_cmd->add_option("--eps", casc.eps, "Filtration strengths")->delimiter(',');
    casc_cmd->add_option("--p", casc.p, "Degree of indistinguishability");

    // hom
    HomCommandConfig hom;
    hom.overlaps = {0.0, 0.25, 0.5, 0.75, 0.85, 1.0};
    auto* hom_cmd = app.add_subcommand("hom", "Hong-Ou-Mandel dip and overlap estimate");
    hom_cmd->add_option("--overlap", hom.overlaps, "Tag overlaps to scan")->delimiter(',');
    hom_cmd->add_option("--t", hom.T, "Beam-splitter transmittivity");

    // tomo
    TomoCommandConfig tomo;
    auto* tomo_cmd = app.add_subcommand("tomo", "Simulated tomography of a protocol state");
    tomo_cmd->add_option("--state", tomo.state, "singlet | sigma_I | sigma_II | sigma_III")
        ->check(CLI::IsMember({"singlet", "sigma_I", "sigma_II", "sigma_III"}));
    tomo_cmd->add_option("--t", tomo.T, "Transmittivity");
    tomo_cmd->add_option("--eps", tomo.eps, "Filtration strength for sigma_III");
    tomo_cmd->add_option("--shots", tomo.shots, "Counts per setting (0 = exact)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream cli_out, cli_err;
        const int code = app.exit(e, cli_out, cli_err);
        out << cli_out.str();
        err << cli_err.str();
        return code == 0 ? 0 : 2;
    }

    const Format format = format_name == "json" ? Format::Json : Format::Csv;
    try {
        Table table;
        if (*sweep_cmd) {
            sweep.t_grid = s_list.empty() ? make_grid(s_lo, s_hi, s_step) : s_list;
            table = cmd_sweep_coupling(sweep);
        } else if (*proto_cmd) {
            proto.t_grid = p_list.empty() ? make_grid(p_lo, p_hi, p_step) : p_list;
            if (!raw.empty()) proto.raw_filter = std::make_pair(raw.at(0), raw.at(1));
            table = cmd_protocol(proto);
            if (!trace_path.empty()) {
                std::ofstream tf(trace_path, std::ios::binary);
                if (!tf) throw ParameterError("cannot open trace file " + trace_path);
                tf << protocol_traces(proto).dump(2) << '\n';
            }
        } else if (*casc_cmd) {
            casc.transmittivities = c_list.empty() ? std::vector<double>(c_n, c_t) : c_list;
            table = cmd_cascade(casc);
        } else if (*hom_cmd) {
            table = cmd_hom(hom);
        } else if (*tomo_cmd) {
            tomo.seed = seed;
            table = cmd_tomo(tomo);
        }

        if (out_path.empty()) {
            write_table(table, format, out, err);
        } else {
            std::ofstream file(out_path, std::ios::binary);
            if (!file) throw ParameterError("cannot open output file " + out_path);
            write_table(table, format, file, err);
        }
    } catch (const ParameterError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "numeric contract violation: " << e.what() << '\n';
        return 3;
    } catch (const std::domain_error& e) {
        err << "numeric contract violation: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

}  // namespace concentration::cli
