#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "ruin/distributions.hpp"

namespace ruin {

/// Composite 8-point Gauss-Legendre rule on [0, y] used to discretize the
/// two-barrier integral equation.
struct QuadratureRule {
  double y = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;

  /// n_nodes must be a positive multiple of 8.
  static QuadratureRule composite_gl(double y, int n_nodes);
};

/// Nystrom solution of the exit-above probability phi(., y) for the plain
/// model with increment law eta:
///
///   h(z) = (1 - F_eta(y - z)) + int_0^y h(t) f_eta(t - z) dt,  z in [0, y],
///
/// extended off the nodes by the natural interpolation formula (plug the
/// node values back into the right-hand side).  evaluate() returns phi:
/// 0 below the ruin barrier, 1 above y, h(z) clamped to [0,1] in between.
class GridFunction {
 public:
  GridFunction(DistPtr increment, QuadratureRule rule, std::vector<double> node_values);

  double y() const { return rule_.y; }
  const QuadratureRule& rule() const { return rule_; }
  const std::vector<double>& node_values() const { return values_; }

  double evaluate(double z) const;

  /// Rows "z,phi,one_minus_phi" on the closed uniform grid {0, step, .., y}.
  void write_csv(std::ostream& out, double z_step) const;

 private:
  double interpolate(double z) const;

  DistPtr increment_;
  QuadratureRule rule_;
  std::vector<double> values_;
};

struct SolveReport {
  int nodes = 0;
  double residual = 0.0;       // sup defect at off-node probes vs refined rule
  double operator_norm = 0.0;  // estimate used for diagnostics
  double rcond = 0.0;
  double clamp_excursion = 0.0;  // how far raw node values left [0,1]
};

/// sup_z int_0^y f_eta(t - z) dt over z in [0, y]: the kernel operator norm
/// on bounded functions, evaluated through the increment CDF on a dense
/// probe grid.
double operator_norm(const Dist& increment, double y, int probes = 4097);

/// Assemble and solve the Nystrom system with n_nodes nodes.  Throws
/// SingularSystem when I - K is numerically singular.
std::pair<GridFunction, SolveReport> solve_two_barrier(const DistPtr& increment, double y,
                                                       int n_nodes);

/// Double the node count until the a-posteriori residual drops below tol.
/// ResidualTooLarge at n_max; NonConvergent when refinement stalls.
std::pair<GridFunction, SolveReport> refine_until(const DistPtr& increment, double y,
                                                  double tol, int n_start = 128,
                                                  int n_max = 8192);

}  // namespace ruin
