#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sectionlab/io.hpp"

namespace CLI {
class App;
}

namespace sectionlab {

inline constexpr const char* kToolkitVersion = "0.1.0";

/// Every option of every subcommand. The same names serve as command-line flags (--name) and
/// config-file keys (name = value). Zero or empty values select command defaults.
struct ExperimentConfig {
  std::string experiment;
  int n = 3;
  int N = 5;
  int d = 2;
  int d_max = 0;
  double epsilon = 0.0;
  std::uint64_t seed = 1;
  int resolution = 0;
  int echo_resolution = 0;
  int samples = 500;
  double tolerance = 1e-8;
  std::string group = "pm";
  int group_count = 2000;
  std::string group_file;
  std::string body;
  std::string body_a;
  std::string body_b;
  std::string family = "ellipsoid";
  std::vector<double> axes = {1.0, 2.0, 3.0};
  int facets = 30;
  std::string input;
  std::string rotations;
  std::string shape;
  std::string output;
  std::string out_dir;
  bool allow_even = false;
  bool chain = false;
  bool elementary = false;
  bool sweep = false;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Binds every field to a long option on `app`.
void add_config_options(CLI::App& app, ExperimentConfig& cfg);

/// Serializes to the key = value config format (all keys, fixed order).
std::string config_to_text(const ExperimentConfig& cfg);

/// Parses the key = value format. Unknown keys and malformed values raise ValidationError.
ExperimentConfig config_from_text(const std::string& text);

/// Throws ValidationError when a field leaves its documented range.
void validate_config(const ExperimentConfig& cfg);

Json config_to_json(const ExperimentConfig& cfg);
std::string config_hash(const ExperimentConfig& cfg);

struct CommandOutput {
  int exit_code = 0;
  Json report;
  /// Extra files (name relative to the output directory, content).
  std::vector<std::pair<std::string, std::string>> files;
};

CommandOutput cmd_metrics(const ExperimentConfig& cfg);
CommandOutput cmd_counterexample(const ExperimentConfig& cfg);
CommandOutput cmd_round2d(const ExperimentConfig& cfg);
CommandOutput cmd_symmetrize(const ExperimentConfig& cfg);
CommandOutput cmd_swclass(const ExperimentConfig& cfg);
CommandOutput cmd_bivec(const ExperimentConfig& cfg);
CommandOutput cmd_mkbody(const ExperimentConfig& cfg);

/// Runs one subcommand. Exit codes: 0 success, 1 assertion or certificate failure, 2 input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sectionlab
