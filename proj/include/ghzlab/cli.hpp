#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ghzlab/probspace.hpp"
#include "ghzlab/state.hpp"
#include "ghzlab/verify.hpp"

namespace ghzlab {

/// Name of the environment variable holding the config-file path.
inline constexpr const char* kConfigEnvVar = "GHZLAB_CONFIG";

/// Runtime defaults shared by the subcommands. Resolution order:
/// built-in defaults, then the JSON config file named by GHZLAB_CONFIG
/// (fields mirror this struct), then explicit flags.
struct Config {
    int dense_cap = kDefaultDenseCap;
    int solver_cap = kDefaultSolverCap;
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t trials = kDefaultTrials;
    double epsilon = kDefaultHolismEpsilon;
    double alpha = kDefaultAlpha;
    std::string format = "json";
};

/// Parses a config file; absent fields keep their defaults. Throws
/// std::runtime_error naming the offending field on a bad value.
Config load_config_file(const std::string& path);

/// Config from the GHZLAB_CONFIG file, or defaults when unset.
Config load_config_from_env();

/// Command-line entry point (arguments without the program name).
/// Writes the primary output to `out` (or the --out file) and
/// diagnostics to `err`. Returns the process exit status: 0 success or
/// verified, 1 verification failure, 2 usage error or malformed input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ghzlab
