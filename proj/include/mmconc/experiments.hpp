#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mmconc/certify.hpp"

namespace mmconc::experiments {

/// Resolved experiment description. One struct covers all commands; each
/// command reads the fields it needs and validates its own hypotheses.
struct ExperimentConfig {
  std::string command; // demo-two-point | suite | sphere-concentration | prop41 |
                       // theorem1 | obsdiam-bracket
  double p = 2.0;
  double q = 2.0;
  double eps = 0.5;
  double kappa = 0.1;
  std::vector<int> n_list;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  std::vector<double> kappa_grid; // obsdiam-bracket only (empty: default grid)
  std::string input_json;         // obsdiam-bracket: mm-space JSON path
  std::string input_dist_csv;     // obsdiam-bracket: CSV pair alternative
  std::string input_weights_csv;
  bool inject_fault = false;  // suite only: failure-reporting hook
  std::string output = "-";   // emission target ("-" = stdout)
  std::string format = "json";
};

/// Plot-ready long-format row.
struct LongRow {
  int n = 0;
  std::string quantity;
  double value = 0.0;
};

struct ExperimentRecord {
  std::string command;
  nlohmann::json params;  // resolved parameter echo
  nlohmann::json results; // command-specific structured payload
  std::vector<LongRow> rows;
  std::optional<certify::SuiteReport> suite;
  std::uint64_t seed = 0;
  double wall_time_ms = 0.0;
};

/// Runs the configured experiment. Every emitted number is a function of
/// (command, parameters, seed); wall_time_ms is the only nondeterministic
/// field. Per-dimension work runs in parallel over seed substreams.
ExperimentRecord run_experiment(const ExperimentConfig& config);

nlohmann::json record_to_json(const ExperimentRecord& record);

/// Writes the record as JSON or long-format CSV ("command,n,quantity,value";
/// the suite command uses its own per-check columns).
void emit(const ExperimentRecord& record, const std::string& format, std::ostream& out);

/// Same, to a file path ("-" writes to stdout). I/O failures carry the path.
void emit_to_path(const ExperimentRecord& record, const std::string& format,
                  const std::string& path);

/// run_experiment followed by emission per config.output / config.format.
void run_and_emit(const ExperimentConfig& config);

/// The canonical two-atom space: distance 1, weights 1/2 and 1/2.
FiniteMMSpace two_point_space();

} // namespace mmconc::experiments
