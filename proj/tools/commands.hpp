// commands.hpp
// Command implementations behind the `concentrate` CLI. Each command turns a
// parameter block into a Table; the writer renders it as CSV or JSON.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace concentration::cli {

enum class Format { Csv, Json };

using Cell = std::variant<double, std::string>;

struct Table {
    std::string command;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    nlohmann::ordered_json reference = nlohmann::ordered_json::object();
};

/// Formats with 12 significant digits; NaN renders as "nan".
std::string format_number(double x);

/// CSV: header row plus one line per row. JSON: {command, columns, rows,
/// summary, reference}. Summary and reference go to `notes` for CSV.
void write_table(const Table& table, Format format, std::ostream& out, std::ostream& notes);

/// Inclusive grid lo, lo + step, ..., hi (hi is snapped onto the grid).
std::vector<double> make_grid(double lo, double hi, double step);

struct SweepCouplingConfig {
    std::vector<double> t_grid;
    double p = 1.0;
};
Table cmd_sweep_coupling(const SweepCouplingConfig& config);

struct ProtocolCommandConfig {
    std::vector<double> t_grid;
    std::vector<double> eps;
    double p = 1.0;
    bool feed_forward = false;
    std::optional<std::pair<double, double>> raw_filter;   // (A_A, A_B)
};
Table cmd_protocol(const ProtocolCommandConfig& config);

/// Full traces for every T of the protocol command (first eps only).
nlohmann::ordered_json protocol_traces(const ProtocolCommandConfig& config);

struct CascadeCommandConfig {
    std::vector<double> transmittivities;   // row N uses the first N entries
    std::vector<double> eps;
    double p = 1.0;
};
Table cmd_cascade(const CascadeCommandConfig& config);

struct HomCommandConfig {
    std::vector<double> overlaps;
    double T = 0.5;
};
Table cmd_hom(const HomCommandConfig& config);

struct TomoCommandConfig {
    std::string state = "sigma_II";   // singlet | sigma_I | sigma_II | sigma_III
    double T = 0.4;
    double eps = 0.25;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
};
Table cmd_tomo(const TomoCommandConfig& config);

/// Parses argv and runs one command. Returns the process exit code:
/// 0 success, 2 configuration error, 3 numeric contract violation.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace concentration::cli
