#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace jetlab {

struct RunConfig {
  int m = 3;
  std::vector<double> weights{1.0, 2.0, 3.0};
  std::string submanifold_kind = "diagonal";  // or "coordinate_plane"
  int d = 3;
  int jet_order = 2;       // k
  int vanishing_order = 2; // n, for the decomposition commands
  int truncation = 40;     // P
  int samples = 20;
  std::uint64_t seed = 0;  // mandatory in the file; 0 only as sentinel pre-parse
  std::map<std::string, double> tolerances;
  std::string out_dir = ".";
  // optional explicit evaluation points (full coordinates, [re, im] pairs);
  // validated against the polydisc and the submanifold at use sites
  std::vector<std::vector<std::complex<double>>> eval_points;

  double tolerance(const std::string& name, double fallback) const;
  void validate() const;
};

RunConfig config_from_json_text(const std::string& text);
RunConfig config_from_file(const std::string& path);
std::string config_to_json_text(const RunConfig& cfg);  // stable key order

}  // namespace jetlab
