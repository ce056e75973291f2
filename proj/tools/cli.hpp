#pragma once

#include "arisem/numeric.hpp"
#include "arisem/semigroup.hpp"

#include <map>
#include <string>
#include <vector>

namespace arisem::cli {

enum class Command { generate, constants, verify, meissel, identity };

/// Thrown after printing --help so the caller can exit 0 without running
/// a command.
struct HelpRequested {};

struct RunConfig {
    Command command = Command::generate;
    semigroup::SemigroupSpec spec;
    unsigned precision_bits = kDefaultPrecisionBits;
    unsigned digits = 25;
    int threads = 1;
    std::string out = "-";  // "-" writes to stdout
    std::string format = "csv";
    std::map<std::string, Real> tolerances;
    std::vector<Real> alpha_grid;
};

/// Parses argv-style arguments (without the program name) plus an optional
/// --config file; flags override config values. Throws Error(UsageError)
/// on bad flags and Error(ConfigError) on a bad config file.
RunConfig parse_config(const std::vector<std::string>& args);

/// Executes a parsed configuration. Returns the process exit code
/// (0 success, 5 verification failure; domain errors are thrown).
int run_command(const RunConfig& config);

/// Full entry point: parse, dispatch, and map errors to the exit-code
/// contract (0 ok, 1 domain, 2 usage, 3 config, 4 io, 5 verification).
int run_cli(const std::vector<std::string>& args);

}  // namespace arisem::cli
