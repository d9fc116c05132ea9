#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>

#include "CLI11.hpp"

#include "jetlab/config.hpp"
#include "jetlab/io.hpp"
#include "jetlab/verify.hpp"

namespace {

int run(const std::string& command, const std::string& config_path, const std::string& out_dir,
        std::uint64_t seed_override) {
  jetlab::RunConfig cfg;
  try {
    cfg = jetlab::config_from_file(config_path);
    if (seed_override != 0) cfg.seed = seed_override;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }

  jetlab::CommandOutput out;
  try {
    out = jetlab::run_command(command, cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s: %s\n", command.c_str(), e.what());
    return 2;
  }

  try {
    std::filesystem::create_directories(cfg.out_dir);
    for (const auto& [name, content] : out.files) {
      jetlab::write_text_file((std::filesystem::path(cfg.out_dir) / name).string(), content);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "output error: %s\n", e.what());
    return 2;
  }

  for (const jetlab::CheckRecord& rec : out.report.records) {
    std::printf("[%s] %-42s residual %.3e tol %.3e\n", rec.pass ? "PASS" : "FAIL",
                rec.name.c_str(), rec.max_residual, rec.tolerance);
  }
  return out.report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for jet kernels, quotient modules and their symmetries "
               "on the polydisc"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;

  for (const char* name :
       {"jetgram", "decompose", "homogeneity", "quotient", "operator", "verify-all"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--out", out_dir, "output directory (default: config out_dir)");
    sub->add_option("--seed", seed, "override the config seed");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  return run(app.get_subcommands().front()->get_name(), config_path, out_dir, seed);
}
