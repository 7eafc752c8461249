#pragma once

// The driver commands: validate, roundtrip, residual, asymptotics,
// stationary, lemmas, eval. Each returns its result table and JSON report;
// writing files and mapping to exit codes is left to the caller.

#include <string>
#include <vector>

#include "uhs/config.hpp"

namespace uhs {

struct CommandOutput {
    std::string command;
    Json results;
    CsvTable table{{}};
    bool pass = false;

    /// {command, config_echo, results, pass}
    Json report(const RunConfig& cfg) const;
};

const std::vector<std::string>& command_names();

/// Throws ConfigurationError for an unknown command.
CommandOutput run_command(const std::string& name, const RunConfig& cfg);

CommandOutput cmd_validate(const RunConfig& cfg);
CommandOutput cmd_roundtrip(const RunConfig& cfg);
CommandOutput cmd_residual(const RunConfig& cfg);
CommandOutput cmd_asymptotics(const RunConfig& cfg);
CommandOutput cmd_stationary(const RunConfig& cfg);
CommandOutput cmd_lemmas(const RunConfig& cfg);
CommandOutput cmd_eval(const RunConfig& cfg);

/// Three fixed interior points (x, y) with coordinates in [-0.8, 0.8].
std::vector<std::pair<RealVector, RealVector>> default_points(int d, int n);

}  // namespace uhs
