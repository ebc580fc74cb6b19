#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spinstar/csv.hpp"
#include "spinstar/evolution.hpp"

namespace spinstar {

inline constexpr const char* kVersion = "spinstar 1.0.0";

enum class Mode { Dynamics, Spectrum, Fluctuation, Decoherence, MutualInfo, Correlation, Validate };

const char* to_string(Mode mode);

struct InitSpec {
  enum class Kind { Up, Down, Plus, Amplitudes };
  Kind kind = Kind::Up;
  double a = 1.0;
  double b = 0.0;
  bool dephased = false;

  /// "up", "down", "plus" or "a,b" with real amplitudes.
  static InitSpec parse(const std::string& text);
  std::string to_string() const;
  CentralState state() const;
};

struct RunConfig {
  Mode mode = Mode::Dynamics;
  ModelParams params;
  InitSpec init;
  TimeGrid grid = TimeGrid::up_to(200.0, 0.05);
  double t_min_fluct = 50.0;
  int oracle_cap = kDefaultOracleLimit;
  std::vector<int> n_list;
  std::vector<InverseTemperature> beta_list;
  double rel_threshold = 0.1;
  std::string output = "-";
  unsigned workers = 0;

  /// Everything that determines the numbers in the output (not the output
  /// path or worker count), as `key = value` pairs named after the flags.
  std::vector<std::pair<std::string, std::string>> metadata() const;
};

enum ExitStatus : int { kExitOk = 0, kExitUsage = 1, kExitResource = 2, kExitValidation = 3, kExitIo = 4 };

/// args excludes the program name. Throws Error(Usage) with the offending
/// flag in the message.
RunConfig parse_config(const std::vector<std::string>& args);

/// Rebuilds the configuration echoed in an output file preamble.
RunConfig config_from_metadata(const CsvTable& table);

std::string format_beta(InverseTemperature beta);

/// Runs the mode and writes its CSV; diagnostics go to `log`.
int execute(const RunConfig& config, std::ostream& log);

/// Full driver with error-to-exit-status mapping.
int run_cli(int argc, const char* const* argv);

}  // namespace spinstar
