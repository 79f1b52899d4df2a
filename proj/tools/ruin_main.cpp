#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ruin/errors.hpp"
#include "ruin/pipeline.hpp"

namespace {

struct Flags {
  std::string config;
  std::optional<double> epsilon, split;
  std::optional<std::string> solver, out;
  std::optional<long> trials, horizon;
  std::optional<std::uint64_t> seed;
};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON run configuration")->required();
  sub->add_option("--epsilon", f.epsilon, "requested precision in (0,1)");
  sub->add_option("--split", f.split, "fraction of epsilon spent on the tail, (0,1]");
  sub->add_option("--solver", f.solver, "fredholm | grid");
  sub->add_option("--trials", f.trials, "Monte Carlo trials per point");
  sub->add_option("--horizon", f.horizon, "Monte Carlo path length");
  sub->add_option("--seed", f.seed, "Monte Carlo base seed");
  sub->add_option("--out", f.out, "output directory");
}

ruin::RunConfig load(const Flags& f) {
  ruin::RunConfig cfg = ruin::load_run_config(f.config);
  if (f.epsilon) cfg.epsilon = *f.epsilon;
  if (f.split) cfg.split = *f.split;
  if (f.solver) cfg.solver = *f.solver;
  if (f.trials) cfg.mc.trials = *f.trials;
  if (f.horizon) cfg.mc.horizon = *f.horizon;
  if (f.seed) cfg.mc.seed = *f.seed;
  if (f.out) cfg.out_dir = *f.out;
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
    throw ruin::ConfigError("--epsilon must lie in (0,1)");
  if (!(cfg.split > 0.0 && cfg.split <= 1.0))
    throw ruin::ConfigError("--split must lie in (0,1]");
  if (!cfg.solver.empty() && cfg.solver != "fredholm" && cfg.solver != "grid")
    throw ruin::ConfigError("--solver must be fredholm or grid");
  if (cfg.mc.trials <= 0) throw ruin::ConfigError("--trials must be positive");
  if (cfg.mc.horizon < 0) throw ruin::ConfigError("--horizon must be nonnegative");
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified ruin probabilities for discrete-time risk models"};
  app.require_subcommand(1);

  Flags bound_f, solve_f, validate_f;
  std::string figure;
  std::optional<std::string> reproduce_out;

  CLI::App* bound = app.add_subcommand("bound", "select the tail bound and barrier y");
  add_flags(bound, bound_f);
  CLI::App* solve = app.add_subcommand("solve", "solve for psi_tilde and write the certificate");
  add_flags(solve, solve_f);
  CLI::App* validate =
      app.add_subcommand("validate", "Monte Carlo check of the certified band");
  add_flags(validate, validate_f);
  CLI::App* reproduce =
      app.add_subcommand("reproduce", "one-command case-study bundle (fig1|fig2|fig3)");
  reproduce->add_option("figure", figure, "fig1 | fig2 | fig3")->required();
  reproduce->add_option("--out", reproduce_out, "output directory override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ruin::errc::config_error);
  }

  try {
    if (*bound)
      ruin::cmd_bound(load(bound_f), std::cout);
    else if (*solve)
      ruin::cmd_solve(load(solve_f), std::cout);
    else if (*validate)
      ruin::cmd_validate(load(validate_f), std::cout);
    else if (*reproduce)
      ruin::cmd_reproduce(figure, reproduce_out, std::cout);
    return 0;
  } catch (const ruin::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
