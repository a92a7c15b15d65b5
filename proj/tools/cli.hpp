#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace capq::cli {

enum class Subcommand { Solve, Levels, Analyze, Bounds, Collar, Chain, Selftest };

struct RunConfig {
  Subcommand subcommand = Subcommand::Selftest;
  std::filesystem::path input;
  std::filesystem::path output_dir;
  int resolution = 0;  // 0 keeps the spec's resolution
  double tolerance = 1e-10;
  std::vector<double> levels;
  bool svg = false;
  bool csv = false;

  // analyze
  std::vector<std::pair<double, double>> compare;
  std::filesystem::path homotopy_input;

  // bounds
  std::string bound;
  std::map<std::string, double> bound_inputs;

  // collar
  std::optional<double> length;
  std::optional<double> radius;

  // chain
  double chain_r = 0.70710678118654752;  // Cap = log 2
  int chain_circles = 9;
  int chain_samples = 720;
  double chain_half_width = 3.0;

  bool show_help = false;
  std::string help_text;
};

/// Parses arguments without the program name. Throws capq::Error with
/// UsageError (message includes usage text) on any invalid input.
RunConfig parse_args(const std::vector<std::string>& args);

/// Executes a parsed config; library errors propagate.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with exit codes 0 success, 2 usage, 3 numerical, 4 I/O.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace capq::cli
