#pragma once

#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "output.hpp"

namespace ubdm::cli {

struct CommandOutput {
  std::vector<OutputFile> files;
  //! Scalars reported per point by sweep, in a fixed order.
  std::vector<std::pair<std::string, double>> summary;
  std::vector<std::string> warnings;
};

const std::vector<std::string>& verbs();
bool is_verb(const std::string& name);

//! Runs one verb (not sweep) and returns its files in memory.
CommandOutput run_command(const std::string& verb, const RunConfig& cfg);

CommandOutput cmd_neff(const RunConfig& cfg);
CommandOutput cmd_markov(const RunConfig& cfg);
CommandOutput cmd_lindblad(const RunConfig& cfg);
CommandOutput cmd_psd(const RunConfig& cfg);
CommandOutput cmd_g1(const RunConfig& cfg);
CommandOutput cmd_g2(const RunConfig& cfg);
CommandOutput cmd_counting(const RunConfig& cfg);
//! Manifest for `files` (entries named manifest.json are skipped): config
//! echo with sources, version, seed, wall time and FNV-1a checksums.
std::string manifest_json(const std::string& verb, const RunConfig& cfg,
                          const std::vector<OutputFile>& files, double wall_time_s);

//! Per-point outputs under point_NNN/ plus summary.csv.
CommandOutput cmd_sweep(const RunConfig& cfg);

}  // namespace ubdm::cli
