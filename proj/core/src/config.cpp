#include "jetlab/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace jetlab {

using ordered_json = nlohmann::ordered_json;

double RunConfig::tolerance(const std::string& name, double fallback) const {
  auto it = tolerances.find(name);
  return it == tolerances.end() ? fallback : it->second;
}

void RunConfig::validate() const {
  if (m < 1 || m > 8) throw std::invalid_argument("config: need 1 <= m <= 8");
  if (static_cast<int>(weights.size()) != m) {
    throw std::invalid_argument("config: weights must have m entries");
  }
  for (double w : weights) {
    if (!(w > 0.0)) throw std::invalid_argument("config: weights must be positive");
  }
  if (submanifold_kind != "diagonal" && submanifold_kind != "coordinate_plane") {
    throw std::invalid_argument("config: submanifold kind must be diagonal or coordinate_plane");
  }
  if (d < 1 || d > m) throw std::invalid_argument("config: need 1 <= d <= m");
  if (submanifold_kind == "diagonal" && d < 2 && m > 1) {
    throw std::invalid_argument("config: diagonal needs d >= 2");
  }
  if (jet_order < 1 || jet_order > 4) throw std::invalid_argument("config: need 1 <= k <= 4");
  if (vanishing_order < 1 || vanishing_order > 6) {
    throw std::invalid_argument("config: need 1 <= n <= 6");
  }
  if (truncation < 1 || truncation > 4096) {
    throw std::invalid_argument("config: need 1 <= truncation <= 4096");
  }
  if (samples < 1 || samples > 100000) throw std::invalid_argument("config: bad sample count");
  if (seed == 0) throw std::invalid_argument("config: a nonzero seed is mandatory");
}

RunConfig config_from_json_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
  }
  RunConfig cfg;
  cfg.m = j.at("m").get<int>();
  cfg.weights = j.at("weights").get<std::vector<double>>();
  if (j.contains("submanifold")) {
    cfg.submanifold_kind = j["submanifold"].value("kind", std::string("diagonal"));
    cfg.d = j["submanifold"].value("d", cfg.m);
  } else {
    cfg.d = cfg.m;
  }
  cfg.jet_order = j.value("jet_order", 2);
  cfg.vanishing_order = j.value("vanishing_order", 2);
  cfg.truncation = j.value("truncation", 40);
  cfg.samples = j.value("samples", 20);
  if (!j.contains("seed")) throw std::invalid_argument("config: seed is mandatory");
  cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("tolerances")) {
    for (auto& [key, val] : j["tolerances"].items()) {
      cfg.tolerances[key] = val.get<double>();
    }
  }
  cfg.out_dir = j.value("out_dir", std::string("."));
  if (j.contains("eval_points")) {
    for (const auto& pt : j["eval_points"]) {
      std::vector<std::complex<double>> coords;
      for (const auto& c : pt) {
        coords.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
      }
      cfg.eval_points.push_back(std::move(coords));
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig config_from_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("config: cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return config_from_json_text(ss.str());
}

std::string config_to_json_text(const RunConfig& cfg) {
  ordered_json j;
  j["m"] = cfg.m;
  j["weights"] = cfg.weights;
  j["submanifold"] = ordered_json{{"kind", cfg.submanifold_kind}, {"d", cfg.d}};
  j["jet_order"] = cfg.jet_order;
  j["vanishing_order"] = cfg.vanishing_order;
  j["truncation"] = cfg.truncation;
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  ordered_json tols = ordered_json::object();
  for (const auto& [k, v] : cfg.tolerances) tols[k] = v;
  j["tolerances"] = tols;
  j["out_dir"] = cfg.out_dir;
  if (!cfg.eval_points.empty()) {
    ordered_json pts = ordered_json::array();
    for (const auto& p : cfg.eval_points) {
      ordered_json pt = ordered_json::array();
      for (const auto& c : p) pt.push_back(ordered_json::array({c.real(), c.imag()}));
      pts.push_back(pt);
    }
    j["eval_points"] = pts;
  }
  return j.dump(2) + "\n";
}

}  // namespace jetlab
