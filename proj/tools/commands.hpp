#pragma once

#include "config.hpp"

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace dampwave::cli {

// Process exit codes.
enum ExitCode : int { kPass = 0, kVerdictFailure = 1, kConfigError = 2, kRuntimeError = 3 };

const std::vector<std::string>& command_names();

// Worker count from DAMPWAVE_WORKERS (default: hardware concurrency).
int worker_count();

// Runs fn(0..count-1) on up to `workers` threads; the first exception is
// rethrown after all workers finish.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

// Executes one subcommand. Writes manifest.cfg, report.txt and CSV files
// under cfg.output_dir; progress goes to `log`. Returns an ExitCode.
// Throws ConfigError for invalid input discovered while running.
int run_command(const std::string& name, const ExperimentConfig& cfg, std::ostream& log);

// Wraps run_command: maps exceptions to exit codes and prints messages.
int dispatch(const std::string& name, const std::string& config_text, const std::string& out_override,
             std::optional<std::uint64_t> seed, bool quiet, std::ostream& out, std::ostream& err);

}  // namespace dampwave::cli
