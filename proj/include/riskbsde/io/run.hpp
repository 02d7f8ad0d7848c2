#pragma once

#include <optional>
#include <string>

#include "riskbsde/io/config.hpp"

namespace riskbsde::io {

struct RunOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<int> threads;
    bool verbose = false;
};

// Executes one subcommand against a parsed config and writes the artifact
// directory atomically. Returns the process exit code:
//   0 success, 2 validation error, 3 numerical failure, 4 check failure.
// Failures print a machine-readable JSON diagnostic to stderr.
int run_experiment(const std::string& config_path, const std::string& subcommand,
                   const RunOverrides& overrides);
int run_experiment_json(const json& config, const std::string& subcommand,
                        const RunOverrides& overrides);

extern const std::vector<std::string> kSubcommands;

}  // namespace riskbsde::io
