// Command line front end: train | bench | theory | sweep | scatter | validate.
// Exit codes: 0 success, 2 config error, 3 runtime error, 4 partial failure.

#include <iostream>

#include <CLI11.hpp>

#include "aggan/config.hpp"
#include "aggan/error.hpp"
#include "aggan/runner.hpp"
#include "aggan/version.hpp"

namespace {

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  if (text.find(',') == std::string::npos) {
    const long n = std::stol(text);
    if (n < 1) throw aggan::ConfigError("--seeds count must be >= 1");
    for (long s = 0; s < n; ++s) seeds.push_back(s);
    return seeds;
  }
  std::string cur;
  for (char c : text + ",") {
    if (c == ',') {
      if (!cur.empty()) seeds.push_back(std::stoull(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (seeds.empty()) throw aggan::ConfigError("--seeds list is empty");
  return seeds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(aggan::kVersion) +
               " - annealing genetic adversarial training lab"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string seeds_text;
  std::string scatter_in, scatter_out;
  bool overwrite = false;
  int jobs = 1;

  auto add_common = [&](CLI::App* cmd, bool needs_out_flags) {
    cmd->add_option("--config", config_path, "experiment config file")
        ->required();
    if (needs_out_flags) {
      cmd->add_option("--out", out_dir, "output directory (overrides config)");
      cmd->add_option("--seeds", seeds_text, "seed count or comma list");
      cmd->add_flag("--overwrite", overwrite,
                    "replace an existing run directory");
      cmd->add_option("--jobs", jobs, "parallel seed jobs")
          ->check(CLI::PositiveNumber);
    }
  };

  CLI::App* cmd_train = app.add_subcommand("train", "run the GAN trainer");
  CLI::App* cmd_bench =
      app.add_subcommand("bench", "imbalanced classification benchmark");
  CLI::App* cmd_theory =
      app.add_subcommand("theory", "finite-chain convergence simulation");
  CLI::App* cmd_sweep =
      app.add_subcommand("sweep", "T x alpha hyper-parameter grid");
  CLI::App* cmd_scatter = app.add_subcommand(
      "scatter", "assign mixture modes to a 2-D sample file");
  CLI::App* cmd_validate =
      app.add_subcommand("validate", "parse and validate a config");

  for (CLI::App* cmd : {cmd_train, cmd_bench, cmd_theory, cmd_sweep})
    add_common(cmd, true);
  add_common(cmd_scatter, false);
  cmd_scatter->add_option("--in", scatter_in, "input sample CSV")->required();
  cmd_scatter->add_option("--out", scatter_out, "output CSV")->required();
  add_common(cmd_validate, false);

  CLI11_PARSE(app, argc, argv);

  try {
    aggan::ExperimentConfig cfg = aggan::parse_config(config_path);

    if (cmd_validate->parsed()) {
      std::cout << "ok: " << aggan::kind_name(cfg.kind) << ", "
                << cfg.seeds.size() << " seed(s)\n";
      return 0;
    }
    if (cmd_scatter->parsed()) {
      aggan::run_scatter(cfg, scatter_in, scatter_out);
      return 0;
    }

    const aggan::ExperimentKind want =
        cmd_train->parsed()   ? aggan::ExperimentKind::Train
        : cmd_bench->parsed() ? aggan::ExperimentKind::Bench
        : cmd_theory->parsed() ? aggan::ExperimentKind::Theory
                               : aggan::ExperimentKind::Sweep;
    if (cfg.kind != want)
      throw aggan::ConfigError(
          "config kind '" + std::string(aggan::kind_name(cfg.kind)) +
          "' does not match the subcommand");

    aggan::RunOptions opts;
    opts.out_override = out_dir;
    if (!seeds_text.empty()) opts.seeds_override = parse_seeds(seeds_text);
    opts.overwrite = overwrite;
    opts.jobs = jobs;
    return aggan::run_experiment(cfg, opts);
  } catch (const aggan::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
