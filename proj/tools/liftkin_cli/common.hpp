#pragma once

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace liftkin::cli {

using json = nlohmann::ordered_json;

// exit codes shared by all commands
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;   ///< validation / parse failure
inline constexpr int kExitNumeric = 3; ///< numeric failure
inline constexpr int kExitFailedChecks = 1;

struct GlobalOptions {
    std::uint64_t seed = 0;
    int threads = 1;
    std::string out_dir = ".";
};

/// Thrown by `verify` when a suite fails; maps to exit code 1.
struct ChecksFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Registers --seed/--threads/--out on a subcommand so they can also come
/// from the config file.
void add_global_options(CLI::App* cmd, GlobalOptions& g);

/// Creates the output directory and returns out_dir + "/" + name.
std::string out_path(const GlobalOptions& g, const std::string& name);

void write_text(const std::string& path, const std::string& text);

json complex_list(const std::vector<std::complex<double>>& zs);

/// Writes the effective settings of the command to config_used.json in the
/// output directory. Feeding that file back through --config reproduces the
/// run (flags still take precedence).
void dump_effective_config(const GlobalOptions& g, const std::string& command,
                           json settings);

} // namespace liftkin::cli
