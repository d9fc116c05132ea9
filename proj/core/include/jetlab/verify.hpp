#pragma once

#include <map>
#include <string>

#include "jetlab/config.hpp"
#include "jetlab/report.hpp"

namespace jetlab {

// One command's outputs: the verification records plus the files it produces
// (name -> content). The CLI writes the files under --out; tests can compare
// contents directly.
struct CommandOutput {
  VerificationReport report;
  std::map<std::string, std::string> files;
};

CommandOutput run_jetgram(const RunConfig& cfg);
CommandOutput run_decompose(const RunConfig& cfg);
CommandOutput run_homogeneity(const RunConfig& cfg);
CommandOutput run_quotient(const RunConfig& cfg);
CommandOutput run_operator(const RunConfig& cfg);
CommandOutput run_verify_all(const RunConfig& cfg);

// Dispatch by subcommand name; throws std::invalid_argument for unknown names.
CommandOutput run_command(const std::string& name, const RunConfig& cfg);

}  // namespace jetlab
