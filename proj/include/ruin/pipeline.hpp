#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ruin/fredholm.hpp"
#include "ruin/grid_solver.hpp"
#include "ruin/monte_carlo.hpp"
#include "ruin/risk_model.hpp"
#include "ruin/tail_bounds.hpp"

namespace ruin {

struct McConfig {
  long trials = 2000;
  long horizon = 2000;
  std::uint64_t seed = 20130401;
  std::vector<double> z_points;
  std::vector<double> i_points{0.0};
};

/// Everything a run needs, parsed from versioned JSON (schema_version 1).
struct RunConfig {
  std::optional<RiskModel> model;
  double epsilon = 0.1;
  double split = 0.5;  // fraction of epsilon spent on the tail term
  std::string tail = "auto";  // auto | lundberg | moment | yang
  double gamma = 2.0;
  std::optional<double> s1;
  std::optional<double> barrier;  // pins y instead of inverting the bound
  std::string solver;             // fredholm | grid; empty = by model kind
  double solver_tol = 1e-5;
  int nodes = 128;
  int max_nodes = 8192;
  InterestGridConfig grid;
  McConfig mc;
  std::string out_dir = "out";
  double csv_step = 0.05;

  const RiskModel& model_ref() const;
  std::string solver_name() const;
};

RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

/// Embedded case-study configurations.  fig1: constant premium 1.3035 with
/// GIG claims, y = 4.5, epsilon 0.011, Nystrom solve.  fig2: the same laws
/// under iid binomial interest, 2D grid solve.  fig3: heavy-tailed
/// increment, moment bound with gamma = 2, y = 50, epsilon 0.1.
RunConfig case_study_config(const std::string& name);

/// Tail-bound selection per the precision procedure: NPC check, then
/// Lundberg if the adjustment coefficient exists, else the moment bound
/// (with premium truncation when E G^gamma diverges), then the barrier.
struct BarrierChoice {
  TailBound bound;
  std::string kind;  // lundberg | moment | yang
  double y = 0.0;
  double tail_value = 0.0;
  std::optional<double> lambda;
  std::optional<KorshunovConstants> constants;
  std::optional<double> truncation;
};

BarrierChoice select_barrier(const RunConfig& cfg);

/// Solver dispatch result: exactly one of the two representations is set.
struct SolveOutput {
  BarrierChoice barrier;
  std::string solver;
  std::optional<GridFunction> fred;
  std::optional<SolveReport> fred_report;
  std::optional<InterestGridFunction> grid;
  std::optional<InterestGridReport> grid_report;

  /// 1 - phi(z, y), the certified approximation of psi.
  double psi_tilde(double z, double i = 0.0) const;
  /// Solver-side error: Nystrom residual, or the certified iteration gap
  /// for the grid (discretization estimate reported separately).
  double solver_error() const;
  double discretization_error() const;
  double epsilon_certified() const { return barrier.tail_value + solver_error(); }
  double epsilon_total() const { return epsilon_certified() + discretization_error(); }
  nlohmann::json certificate(const RunConfig& cfg) const;
};

SolveOutput run_solve(const RunConfig& cfg);

struct ValidationRow {
  double z = 0.0;
  double i = 0.0;
  MCEstimate est;
  double predicted = 0.0;
  double band = 0.0;
  bool ok = false;
};

std::vector<ValidationRow> run_validation(const RunConfig& cfg, const SolveOutput& solve);

void write_validation_csv(std::ostream& out, const std::vector<ValidationRow>& rows);

/// CLI entry points.  They write files under cfg.out_dir and print a short
/// summary; failures surface as ruin::Error with the matching exit code.
void cmd_bound(const RunConfig& cfg, std::ostream& out);
void cmd_solve(const RunConfig& cfg, std::ostream& out);
void cmd_validate(const RunConfig& cfg, std::ostream& out);
void cmd_reproduce(const std::string& name, const std::optional<std::string>& out_override,
                   std::ostream& out);

}  // namespace ruin
