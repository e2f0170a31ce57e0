#include <cstdint>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "radar/cli.hpp"
#include "radar/io.hpp"

namespace {

std::vector<std::pair<int, int>> parse_budgets(const std::string& spec) {
  std::vector<std::pair<int, int>> out;
  size_t pos = 0;
  while (pos < spec.size()) {
    const size_t comma = spec.find(',', pos);
    const std::string item = spec.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const size_t colon = item.find(':');
    if (colon == std::string::npos)
      throw CLI::ValidationError("--budgets", "expected K_P:K_R pairs");
    out.emplace_back(std::stoi(item.substr(0, colon)),
                     std::stoi(item.substr(colon + 1)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse antenna and pulse selection for colocated MIMO radar"};
  app.require_subcommand(1);

  std::string config_path, out_dir, selection_path, budgets_spec;
  uint64_t seed = 0;
  bool seed_set = false, out_set = false;

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    auto* c = cmd->add_option("--config", config_path, "job config (JSON)");
    if (needs_config) c->required();
    cmd->add_option("--out", out_dir, "output directory override")
        ->each([&](const std::string&) { out_set = true; });
    cmd->add_option("--seed", seed, "RNG seed override")
        ->each([&](const std::string&) { seed_set = true; });
  };

  CLI::App* design = app.add_subcommand("design", "run a solver, write selection.json and crlb.csv");
  add_common(design, true);

  CLI::App* sweep = app.add_subcommand("sweep", "one design per budget pair, write sweep.csv");
  add_common(sweep, true);
  sweep->add_option("--budgets", budgets_spec, "ascending K_P:K_R pairs, comma separated")
      ->required();

  CLI::App* evaluate = app.add_subcommand("evaluate", "ambiguity traces and optional MSE for a stored selection");
  add_common(evaluate, true);
  evaluate->add_option("--selection", selection_path, "selection.json path")->required();

  CLI::App* verify = app.add_subcommand("verify", "run the built-in property suite");
  verify->add_option("--seed", seed, "RNG seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return radar::cli::cmd_verify(seed);

    radar::io::JobConfig job = radar::io::load_job_config(config_path);
    if (out_set) job.output_dir = out_dir;
    if (seed_set) job.seed = seed;

    if (design->parsed()) return radar::cli::cmd_design(job);
    if (sweep->parsed())
      return radar::cli::cmd_sweep(job, parse_budgets(budgets_spec));
    if (evaluate->parsed())
      return radar::cli::cmd_evaluate(job, selection_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
