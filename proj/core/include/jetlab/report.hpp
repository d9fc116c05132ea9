#pragma once

#include <string>
#include <vector>

#include "jetlab/config.hpp"

namespace jetlab {

// One verification record; `anchor` names the identity being checked (the
// fixed registry in anchors() below), so reports stay greppable.
struct CheckRecord {
  std::string name;
  std::string anchor;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::string command;
  RunConfig config;
  std::vector<CheckRecord> records;

  bool all_pass() const;
  void add(std::string name, std::string anchor, double residual, double tol);
};

const std::vector<std::string>& known_anchors();

// Deterministic serialization: stable key order, fixed float formatting, no
// timestamps; byte-identical for identical configs.
std::string report_to_json_text(const VerificationReport& r);

}  // namespace jetlab
