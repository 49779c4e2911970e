// commands.hpp — the CLI subcommands as library calls
#pragma once

#include "usc/config.hpp"
#include "usc/scan.hpp"

#include <string>
#include <vector>

namespace usc {

inline constexpr const char* kVersion = "0.1.0";

const std::vector<std::string>& command_names();

// Runs one subcommand over cfg (validated here) on `jobs` workers.
// Throws ConfigError for an unknown command or an axis it does not accept.
ScanResult run_command(const std::string& name, const RunConfig& cfg, int jobs = 1);

// Certified diagonalization plus the thermal Liouvillian on cfg.levels levels.
double gap_at(const ModelParams& p, const std::vector<BathSpec>& baths, double temperature, int levels);

}  // namespace usc
