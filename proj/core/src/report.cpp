#include "jetlab/report.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace jetlab {

using ordered_json = nlohmann::ordered_json;

bool VerificationReport::all_pass() const {
  return std::all_of(records.begin(), records.end(),
                     [](const CheckRecord& r) { return r.pass; });
}

void VerificationReport::add(std::string name, std::string anchor, double residual, double tol) {
  const auto& known = known_anchors();
  if (std::find(known.begin(), known.end(), anchor) == known.end()) {
    throw std::logic_error("unknown report anchor: " + anchor);
  }
  records.push_back({std::move(name), std::move(anchor), residual, tol, residual < tol});
}

const std::vector<std::string>& known_anchors() {
  static const std::vector<std::string> anchors = {
      "kernel.derivative_oracle",    // closed-form mixed partials vs finite differences
      "kernel.hermitian_symmetry",   // conj-transpose law of the two-point Gram
      "jet.gram_fixture",            // explicit low-order jet Gram matrices
      "congruence.block_diagonal",   // X G X^* block structure
      "sigma.orthogonality",         // cross-sigma pairings on the diagonal
      "sigma.norm",                  // Gram norm vs closed-form constants
      "wilkins.decomposition",       // component Grams vs their product kernels
      "kernel.quasi_invariance",     // scalar kernel transformation law
      "cocycle.projective_law",      // composition law up to a unimodular constant
      "jet.quasi_invariance",        // matrix cocycle kernel identity on the diagonal
      "cocycle.cross_recovery",      // least-squares recovery vs constructed cocycle
      "quotient.series_reconstruction",  // basis series sum vs restricted jet Gram
      "operator.reducing_projection",    // commutators of component projections
      "report.determinism",          // byte-identical reruns
  };
  return anchors;
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

}  // namespace

std::string report_to_json_text(const VerificationReport& r) {
  ordered_json j;
  j["command"] = r.command;
  j["environment"] = ordered_json{
      {"tool", "jetlab"},
      {"version", "0.1.0"},
      {"seed", r.config.seed},
      {"config", ordered_json::parse(config_to_json_text(r.config))},
  };
  ordered_json recs = ordered_json::array();
  for (const CheckRecord& rec : r.records) {
    recs.push_back(ordered_json{
        {"name", rec.name},
        {"anchor", rec.anchor},
        {"max_residual", fmt_double(rec.max_residual)},
        {"tolerance", fmt_double(rec.tolerance)},
        {"pass", rec.pass},
    });
  }
  j["checks"] = recs;
  j["all_pass"] = r.all_pass();
  return j.dump(2) + "\n";
}

}  // namespace jetlab
