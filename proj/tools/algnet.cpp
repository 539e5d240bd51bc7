// algnet: experiments on algorithmic networks.
//
//   algnet bb | tvg | run | halting-sweep | synergy | central
//          [--config PATH] [--seed U64] [--out DIR] [--budget STEPS] [--jobs K]
//          [--set key=value ...]
//
// Precedence: defaults < config file < ALGNET_SEED (seed only) < flags.
// Exit codes: 0 success, 1 validation error, 2 runtime error.

#include <omp.h>

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "algnet/cli.hpp"

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::uint64_t> budget;
  std::optional<int> jobs;
  std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "key = value config file");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--budget", f.budget, "step budget per program run");
  cmd->add_option("--jobs", f.jobs, "OpenMP threads")->check(CLI::PositiveNumber);
  cmd->add_option("--set", f.sets, "override a config key, key=value")->allow_extra_args(false);
}

algnet::cli::ExperimentConfig resolve(const Flags& f) {
  algnet::cli::ExperimentConfig cfg;
  if (!f.config.empty()) algnet::cli::load_config_file(cfg, f.config);
  if (const char* env = std::getenv("ALGNET_SEED"); env && *env) cfg.set("seed", env);
  for (const auto& kv : f.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw algnet::cli::ValidationError("--set expects key=value, got " + kv);
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (f.seed) cfg.seed = *f.seed;
  if (f.out) cfg.out = *f.out;
  if (f.budget) cfg.budget = *f.budget;
  if (f.jobs) cfg.jobs = *f.jobs;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Algorithmic networks: Busy Beaver imitation, halting decisions and synergy"};
  app.require_subcommand(1);
  Flags flags;
  using Command = std::vector<std::filesystem::path> (*)(const algnet::cli::ExperimentConfig&, std::ostream&);
  const std::vector<std::tuple<std::string, std::string, Command>> commands{
      {"bb", "Busy Beaver table (bb.csv)", &algnet::cli::cmd_bb},
      {"tvg", "diffusion metrics of a TVG file or generated graph", &algnet::cli::cmd_tvg},
      {"run", "one networked run plus isolated runs (run.json, nodes.csv)", &algnet::cli::cmd_run},
      {"halting-sweep", "halting decisions over N and trials (sweep.csv)", &algnet::cli::cmd_halting_sweep},
      {"synergy", "expected local synergy report (synergy.json)", &algnet::cli::cmd_synergy},
      {"central", "central node and its cycle count (central.json)", &algnet::cli::cmd_central},
  };
  std::vector<CLI::App*> subs;
  for (const auto& [name, help, fn] : commands) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, flags);
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const auto cfg = resolve(flags);
    if (cfg.jobs > 0) omp_set_num_threads(cfg.jobs);
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (!subs[i]->parsed()) continue;
      for (const auto& p : std::get<2>(commands[i])(cfg, std::cerr)) std::cout << p.string() << '\n';
    }
  } catch (const algnet::cli::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
