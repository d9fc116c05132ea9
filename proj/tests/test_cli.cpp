#include <algorithm>
#include <complex>

#include "doctest.h"
#include "jetlab/config.hpp"
#include "jetlab/report.hpp"
#include "jetlab/verify.hpp"

using namespace jetlab;
using Cx = std::complex<double>;

namespace {

const char* kDefaultJson = R"({
  "m": 3,
  "weights": [1.0, 2.0, 3.0],
  "submanifold": { "kind": "diagonal", "d": 3 },
  "jet_order": 2,
  "vanishing_order": 2,
  "truncation": 24,
  "samples": 6,
  "seed": 12345,
  "tolerances": {},
  "out_dir": "out"
})";

}  // namespace

TEST_CASE("config parsing") {
  RunConfig cfg = config_from_json_text(kDefaultJson);
  CHECK(cfg.m == 3);
  CHECK(cfg.weights == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(cfg.submanifold_kind == "diagonal");
  CHECK(cfg.d == 3);
  CHECK(cfg.jet_order == 2);
  CHECK(cfg.truncation == 24);
  CHECK(cfg.seed == 12345);

  // round trip through the stable serializer
  RunConfig back = config_from_json_text(config_to_json_text(cfg));
  CHECK(config_to_json_text(back) == config_to_json_text(cfg));
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(config_from_json_text("{"), std::invalid_argument);
  CHECK_THROWS_AS(config_from_json_text(R"({"m": 2, "weights": [1.0, 2.0]})"),
                  std::invalid_argument);  // seed mandatory
  CHECK_THROWS_AS(config_from_json_text(R"({"m": 2, "weights": [1.0], "seed": 7})"),
                  std::invalid_argument);  // weight count
  CHECK_THROWS_AS(config_from_json_text(R"({"m": 2, "weights": [1.0, -1.0], "seed": 7})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      config_from_json_text(
          R"({"m": 2, "weights": [1.0, 2.0], "submanifold": {"kind": "torus", "d": 2}, "seed": 7})"),
      std::invalid_argument);
}

TEST_CASE("report anchors are from the fixed registry") {
  VerificationReport rep;
  rep.add("example", "sigma.orthogonality", 1e-12, 1e-10);
  CHECK(rep.records.back().pass);
  CHECK_THROWS_AS(rep.add("bad", "made.up.anchor", 0.0, 1.0), std::logic_error);

  const auto& anchors = known_anchors();
  CHECK(std::find(anchors.begin(), anchors.end(), "kernel.quasi_invariance") != anchors.end());
  CHECK(std::find(anchors.begin(), anchors.end(), "wilkins.decomposition") != anchors.end());
}

TEST_CASE("jetgram command writes the origin fixture") {
  RunConfig cfg = config_from_json_text(kDefaultJson);
  CommandOutput out = run_jetgram(cfg);
  REQUIRE(out.files.count("jetgram_000.csv") == 1);
  REQUIRE(out.files.count("jetgram.json") == 1);
  // origin Gram is diag(1, 2, 3) in "re,im" cells
  CHECK(out.files["jetgram_000.csv"] ==
        "\"1,0\",\"0,0\",\"0,0\"\n\"0,0\",\"2,0\",\"0,0\"\n\"0,0\",\"0,0\",\"3,0\"\n");
  CHECK(out.report.all_pass());
}

TEST_CASE("jetgram rejects boundary evaluation points") {
  RunConfig cfg = config_from_json_text(kDefaultJson);
  cfg.eval_points = {{Cx(1.0, 0.0), Cx(1.0, 0.0), Cx(1.0, 0.0)}};
  CHECK_THROWS_AS(run_jetgram(cfg), std::domain_error);

  // off-submanifold points are rejected too
  cfg.eval_points = {{Cx(0.1, 0.0), Cx(0.2, 0.0), Cx(0.3, 0.0)}};
  CHECK_THROWS_AS(run_jetgram(cfg), std::domain_error);
}

TEST_CASE("command dispatch") {
  RunConfig cfg = config_from_json_text(kDefaultJson);
  CHECK_THROWS_AS(run_command("no-such-command", cfg), std::invalid_argument);
  CommandOutput out = run_command("decompose", cfg);
  CHECK(out.report.command == "decompose");
  CHECK(out.report.all_pass());
  CHECK(out.files.count("decomposition.json") == 1);
  CHECK(out.files.count("congruence.csv") == 1);
}

TEST_CASE("reports are byte-identical across reruns") {
  RunConfig cfg = config_from_json_text(kDefaultJson);
  for (const char* cmd : {"decompose", "homogeneity", "quotient", "operator"}) {
    CommandOutput a = run_command(cmd, cfg);
    CommandOutput b = run_command(cmd, cfg);
    CHECK(a.files == b.files);
    CHECK(report_to_json_text(a.report) == report_to_json_text(b.report));
    CHECK(a.report.all_pass());
  }
}

TEST_CASE("coordinate-plane configurations run end to end") {
  RunConfig cfg = config_from_json_text(kDefaultJson);
  cfg.submanifold_kind = "coordinate_plane";
  cfg.d = 2;
  CommandOutput gram = run_jetgram(cfg);
  CHECK(gram.report.all_pass());
  CommandOutput all = run_verify_all(cfg);
  CHECK(all.report.all_pass());
}

TEST_CASE("tightened tolerances produce controlled failures") {
  RunConfig cfg = config_from_json_text(kDefaultJson);
  cfg.tolerances["jet_quasi_invariance"] = 1e-15;
  CommandOutput out = run_homogeneity(cfg);
  bool saw_failure = false;
  for (const CheckRecord& rec : out.report.records) {
    if (rec.name == "jet quasi-invariance") {
      CHECK(rec.tolerance == 1e-15);
      saw_failure = saw_failure || !rec.pass;
    }
  }
  CHECK(saw_failure);
  CHECK(!out.report.all_pass());
}
