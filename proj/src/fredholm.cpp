#include "ruin/fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <Eigen/Dense>

#include "ruin/errors.hpp"
#include "ruin/numerics.hpp"

namespace ruin {

QuadratureRule QuadratureRule::composite_gl(double y, int n_nodes) {
  if (!(y > 0.0)) throw std::invalid_argument("composite_gl: y must be positive");
  if (n_nodes <= 0 || n_nodes % 8 != 0)
    throw std::invalid_argument("composite_gl: node count must be a positive multiple of 8");
  const PanelRule pr = gauss_legendre_panels(0.0, y, n_nodes / 8, 8);
  QuadratureRule rule;
  rule.y = y;
  rule.nodes = pr.nodes;
  rule.weights = pr.weights;
  return rule;
}

GridFunction::GridFunction(DistPtr increment, QuadratureRule rule,
                           std::vector<double> node_values)
    : increment_(std::move(increment)), rule_(std::move(rule)), values_(std::move(node_values)) {
  if (values_.size() != rule_.nodes.size())
    throw std::invalid_argument("GridFunction: node/value size mismatch");
}

double GridFunction::interpolate(double z) const {
  double acc = 1.0 - increment_->cdf(rule_.y - z);
  for (size_t j = 0; j < rule_.nodes.size(); ++j)
    acc += rule_.weights[j] * increment_->pdf(rule_.nodes[j] - z) * values_[j];
  return acc;
}

double GridFunction::evaluate(double z) const {
  if (z < 0.0) return 0.0;
  if (z > rule_.y) return 1.0;
  return std::clamp(interpolate(z), 0.0, 1.0);
}

void GridFunction::write_csv(std::ostream& out, double z_step) const {
  if (!(z_step > 0.0)) throw std::invalid_argument("write_csv: step must be positive");
  out << "z,phi,one_minus_phi\n";
  const long steps = std::lround(rule_.y / z_step);
  char line[128];
  for (long k = 0; k <= steps; ++k) {
    const double z = std::min(k * z_step, rule_.y);
    const double phi = evaluate(z);
    std::snprintf(line, sizeof(line), "%.12g,%.12g,%.12g\n", z, phi, 1.0 - phi);
    out << line;
  }
}

double operator_norm(const Dist& increment, double y, int probes) {
  if (!(y > 0.0)) throw std::invalid_argument("operator_norm: y must be positive");
  double best = 0.0;
  for (int k = 0; k < probes; ++k) {
    const double z = y * k / (probes - 1);
    best = std::max(best, increment.cdf(y - z) - increment.cdf(-z));
  }
  return best;
}

namespace {

double residual_estimate(const Dist& inc, const QuadratureRule& rule,
                         const std::vector<double>& values) {
  const double y = rule.y;
  const int n = static_cast<int>(rule.nodes.size());
  const auto rhs = [&](double z) { return 1.0 - inc.cdf(y - z); };
  const auto interp = [&](double z) {
    double acc = rhs(z);
    for (int j = 0; j < n; ++j)
      acc += rule.weights[j] * inc.pdf(rule.nodes[j] - z) * values[j];
    return acc;
  };

  // evaluate the interpolant on a refined (independent) rule once, then
  // probe the equation defect at off-node points against that rule
  const QuadratureRule fine = QuadratureRule::composite_gl(y, 2 * n);
  const int nf = static_cast<int>(fine.nodes.size());
  std::vector<double> fine_values(nf);
  for (int q = 0; q < nf; ++q) fine_values[q] = interp(fine.nodes[q]);

  double worst = 0.0;
  const int probes = 4 * n;
  for (int k = 0; k < probes; ++k) {
    const double z = (k + 0.5) * y / probes;
    double integral = 0.0;
    for (int q = 0; q < nf; ++q)
      integral += fine.weights[q] * inc.pdf(fine.nodes[q] - z) * fine_values[q];
    worst = std::max(worst, std::abs(interp(z) - rhs(z) - integral));
  }
  return worst;
}

}  // namespace

std::pair<GridFunction, SolveReport> solve_two_barrier(const DistPtr& increment, double y,
                                                       int n_nodes) {
  if (!increment) throw std::invalid_argument("solve_two_barrier: null increment");
  if (!increment->has_density())
    throw NoDensity("solve_two_barrier: increment law must have a density");
  const Dist& inc = *increment;
  QuadratureRule rule = QuadratureRule::composite_gl(y, n_nodes);
  const int n = n_nodes;

  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    const double z = rule.nodes[i];
    for (int j = 0; j < n; ++j)
      a(i, j) -= rule.weights[j] * inc.pdf(rule.nodes[j] - z);
    b(i) = 1.0 - inc.cdf(y - z);
  }

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  SolveReport report;
  report.nodes = n;
  report.rcond = lu.rcond();
  if (!(report.rcond > 1e-14))
    throw SingularSystem("solve_two_barrier: I - K is numerically singular");
  Eigen::VectorXd h = lu.solve(b);

  std::vector<double> values(h.data(), h.data() + n);
  double excursion = 0.0;
  for (double v : values) excursion = std::max({excursion, -v, v - 1.0});
  report.clamp_excursion = std::max(excursion, 0.0);
  report.operator_norm = operator_norm(inc, y);
  report.residual = residual_estimate(inc, rule, values);
  return {GridFunction(increment, std::move(rule), std::move(values)), report};
}

std::pair<GridFunction, SolveReport> refine_until(const DistPtr& increment, double y,
                                                  double tol, int n_start, int n_max) {
  if (!(tol > 0.0)) throw std::invalid_argument("refine_until: tol must be positive");
  int n = std::max(8, ((n_start + 7) / 8) * 8);
  double prev_residual = std::numeric_limits<double>::infinity();
  while (true) {
    auto solved = solve_two_barrier(increment, y, n);
    const double res = solved.second.residual;
    if (res <= tol) return solved;
    if (res > 0.7 * prev_residual)
      throw NonConvergent("refine_until: residual is not contracting under refinement");
    prev_residual = res;
    if (2 * n > n_max)
      throw ResidualTooLarge("refine_until: residual above tolerance at the node budget");
    n *= 2;
  }
}

}  // namespace ruin
