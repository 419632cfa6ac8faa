#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "table.hpp"
#include "wordwait/population.hpp"

namespace wordwait::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitNumerical = 2,
  kExitStepCap = 3,
};

/// Subcommand plus every override. Unset optionals take the per-command
/// default when the command runs.
struct RunConfig {
  std::string command;
  std::optional<double> N;
  std::optional<double> mu;
  std::optional<double> L;
  std::optional<int> W;
  std::optional<std::uint64_t> reps;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> bin;
  std::optional<double> lambda;
  std::optional<double> generation_years;
  std::optional<std::uint64_t> step_cap;
  std::optional<std::string> form;  // printed | first-step
  std::optional<std::string> out;
  std::optional<std::string> format;  // csv | json
  std::optional<unsigned> threads;
  std::vector<std::string> words;
};

/// Names of the subcommands, in help order.
const std::vector<std::string>& command_names();

/// Reads `key=value` lines into `config` for every key not already set.
/// Blank lines and lines starting with '#' are skipped. Throws
/// std::invalid_argument on an unknown key or a malformed value.
void apply_config_file(const std::string& path, RunConfig& config);

/// Fully resolved parameters for one command.
struct ResolvedParams {
  PopulationParams population;    // L here is the active segment length
  std::vector<int> word_lengths;  // W values the command covers
  std::vector<std::string> words;
  std::uint64_t reps = 0;
  std::uint64_t seed = 1;
  std::uint64_t bin = 1;
  double lambda = 1.0;
  std::uint64_t step_cap = 0;
  StoppingForm form = StoppingForm::kPrinted;
  unsigned threads = 0;
};

/// Fills the per-command defaults and checks ranges. Throws
/// std::invalid_argument on a bad value.
ResolvedParams resolve(const RunConfig& config);

/// Runs one command and returns its dataset. `warnings` collects messages
/// meant for stderr.
Table build_table(const std::string& command, const ResolvedParams& params,
                  std::vector<std::string>& warnings);

/// True if the table is a failed self-test.
bool selftest_failed(const Table& table);

/// Parses arguments (without the program name) and runs the command,
/// writing data to `out` unless --out is given and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace wordwait::cli
