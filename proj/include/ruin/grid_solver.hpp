#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ruin/reach_avoid.hpp"
#include "ruin/risk_model.hpp"

namespace ruin {

/// Discretization of [0, y] x rate-space for the interest model.  Surplus
/// is split into uniform cells represented by midpoints; the rate axis is
/// either the exact atom support of the iid rate noise (alpha = 0) or a
/// uniform cell grid on [0, j] for the AR(1) variant.
struct InterestGridConfig {
  int surplus_cells = 400;
  int rate_cells = 0;    // 0: use the rate-noise atoms directly
  double rate_cap = 0.0; // j; defaults to the top rate atom when 0
  int m_max = 512;       // certificate search window
  bool richardson = true;
};

struct InterestGridReport {
  ContractionCertificate certificate;
  long iterations = 0;
  double iteration_error = 0.0;    // certified value-iteration gap
  double richardson_error = 0.0;   // grid-halving discretization estimate
  double row_defect = 0.0;         // max |1 - row sum| of the built kernel
  int surplus_cells = 0;
  int rate_points = 0;

  double reported_error() const { return iteration_error + richardson_error; }
};

/// Reach-avoid value w(z, i) = P(surplus exceeds y strictly before dropping
/// below 0), tabulated at surplus midpoints x rate points.  evaluate()
/// interpolates linearly in z (with end-segment extension) at a rate point.
class InterestGridFunction {
 public:
  InterestGridFunction(double y, std::vector<double> midpoints, std::vector<double> rates,
                       Eigen::MatrixXd w);

  double y() const { return y_; }
  const std::vector<double>& midpoints() const { return midpoints_; }
  const std::vector<double>& rates() const { return rates_; }
  const Eigen::MatrixXd& values() const { return w_; }

  int rate_index(double rate) const;  // nearest tabulated rate
  double evaluate(double z, int rate_idx) const;
  double evaluate_at_rate(double z, double rate) const;

  /// Rows "z,i,phi,one_minus_phi" over midpoints x rate points.
  void write_csv(std::ostream& out) const;

 private:
  double y_;
  std::vector<double> midpoints_;
  std::vector<double> rates_;
  Eigen::MatrixXd w_;  // surplus x rate
};

/// Solve the two-barrier reach-avoid problem for the interest model by
/// value iteration with a contraction certificate; eps_iter is the target
/// for the certified iteration gap.
std::pair<InterestGridFunction, InterestGridReport> solve_interest_model(
    const RiskModel& model, double y, const InterestGridConfig& config, double eps_iter);

}  // namespace ruin
