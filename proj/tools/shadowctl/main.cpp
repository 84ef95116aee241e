#include "config.hpp"
#include "experiment.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
  using experiment::Command;
  CLI::App app{"Shadowing of finite-jump pseudo-orbits with certified constants"};
  app.require_subcommand(1);

  experiment::ExperimentConfig flags;
  std::string config_file;
  std::string system, epsilon, jump_scale, out, delta;
  std::int64_t jumps = 0, trials = 0, margin = 0;
  std::uint64_t seed = 0;
  bool table = false;

  struct Sub {
    CLI::App* app;
    Command cmd;
  };
  std::vector<Sub> subs = {
      {app.add_subcommand("shadow", "shadow seeded pseudo-orbits and cross-check against the direct oracle"),
       Command::Shadow},
      {app.add_subcommand("falsify", "search for pairs of pseudo-orbits that violate the delta(eps) constant"),
       Command::Falsify},
      {app.add_subcommand("constants", "derive and print the certified constants"), Command::Constants},
      {app.add_subcommand("gen", "generate one seeded pseudo-orbit"), Command::Gen},
  };
  for (auto& s : subs) {
    auto* a = s.app;
    a->add_option("--config", config_file, "key=value file; flags override it");
    a->add_option("--system", system, "shift, shift:<m> or toral");
    a->add_option("--epsilon", epsilon, "target distance, e.g. 2^-6, 1/64");
    a->add_option("--jumps", jumps, "jumps per pseudo-orbit (shadow: maximum)");
    a->add_option("--jump-scale", jump_scale, "jump sizes stay below this; must not exceed rho");
    a->add_option("--trials", trials, "number of trials");
    a->add_option("--seed", seed, "campaign seed");
    a->add_option("--out", out, "output directory");
    a->add_option("--window-margin", margin, "extra certification window on each side");
    a->add_flag("--emit-error-table", table, "store per-index errors in certificates");
    a->add_option("--delta", delta, "falsify: use this delta instead of the certified one");
  }

  CLI11_PARSE(app, argc, argv);

  for (auto& s : subs) {
    if (!s.app->parsed()) continue;
    auto* a = s.app;
    experiment::ExperimentConfig cfg;
    try {
      if (!config_file.empty()) experiment::apply_key_values(cfg, experiment::read_key_values(config_file));
    } catch (const std::exception& e) {
      std::cerr << "rejected: " << e.what() << "\n";
      return experiment::kRejected;
    }
    if (a->count("--system")) cfg.system = system;
    if (a->count("--epsilon")) cfg.epsilon = epsilon;
    if (a->count("--jumps")) cfg.jumps = jumps;
    if (a->count("--jump-scale")) cfg.jump_scale = jump_scale;
    if (a->count("--trials")) cfg.trials = trials;
    if (a->count("--seed")) cfg.seed = seed;
    if (a->count("--out")) cfg.output_dir = out;
    if (a->count("--window-margin")) cfg.window_margin = margin;
    if (table) cfg.emit_error_table = true;
    if (a->count("--delta")) cfg.delta = delta;
    return experiment::run(s.cmd, cfg, std::cout);
  }
  return experiment::kRejected;
}
