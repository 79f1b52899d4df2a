#include "ruin/grid_solver.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "ruin/errors.hpp"

namespace ruin {

namespace {

struct PremiumAtoms {
  std::vector<double> x;
  std::vector<double> p;
};

PremiumAtoms premium_atoms(const Dist& premium) {
  PremiumAtoms out;
  if (premium.is_discrete()) {
    for (const Atom& a : premium.atoms()) {
      out.x.push_back(a.x);
      out.p.push_back(a.p);
    }
    return out;
  }
  // continuous premium support: quantile-midpoint discretization (smoke
  // fidelity only; the case studies use a degenerate premium)
  const int k = 32;
  for (int i = 0; i < k; ++i) {
    out.x.push_back(premium.quantile((i + 0.5) / k));
    out.p.push_back(1.0 / k);
  }
  return out;
}

/// Precomputed one-step kernel.  The rate draw is independent of the claim
/// and premium draws, so the transition from cell (r, a) factorizes into a
/// rate kernel (a -> b) and a surplus kernel (r -> c) that depends on the
/// current rate only.
struct GridOperator {
  int nz = 0, ni = 0;
  double y = 0.0;
  std::vector<double> mids, rates;
  Eigen::MatrixXd rate_kernel;             // ni x ni, rows may sum < 1
  Eigen::VectorXd rate_escape;             // P(next rate above cap)
  std::vector<Eigen::MatrixXd> surplus_kernel;  // per current rate: nz x nz
  Eigen::MatrixXd hit_target;              // nz x ni
  Eigen::MatrixXd hit_absorb;              // nz x ni (target or ruin)
  double row_defect = 0.0;

  void sweep(const Eigen::MatrixXd& in, const Eigen::MatrixXd& source,
             Eigen::MatrixXd& out) const {
    const Eigen::MatrixXd mixed = in * rate_kernel.transpose();  // nz x ni
    for (int a = 0; a < ni; ++a)
      out.col(a) = source.col(a) + surplus_kernel[a] * mixed.col(a);
  }
};

GridOperator build_operator(const RiskModel& model, double y, const InterestGridConfig& cfg) {
  if (!model.has_interest())
    throw ConfigError("solve_interest_model: model must be the interest variant");
  if (cfg.surplus_cells < 8)
    throw GridTooCoarse("solve_interest_model: need at least 8 surplus cells");
  if (!(y > 0.0)) throw std::invalid_argument("solve_interest_model: y must be positive");

  GridOperator op;
  op.nz = cfg.surplus_cells;
  op.y = y;
  const double h = y / op.nz;
  op.mids.resize(op.nz);
  for (int r = 0; r < op.nz; ++r) op.mids[r] = (r + 0.5) * h;

  const Dist& noise = *model.interest_noise();
  if (cfg.rate_cells == 0) {
    if (model.alpha() != 0.0)
      throw ConfigError("solve_interest_model: atom rate grid requires alpha = 0");
    if (!noise.is_discrete())
      throw ConfigError("solve_interest_model: atom rate grid requires discrete rate noise");
    const auto& atoms = noise.atoms();
    op.ni = static_cast<int>(atoms.size());
    op.rates.resize(op.ni);
    op.rate_kernel.resize(op.ni, op.ni);
    op.rate_escape = Eigen::VectorXd::Zero(op.ni);
    for (int a = 0; a < op.ni; ++a) {
      op.rates[a] = atoms[a].x;
      for (int b = 0; b < op.ni; ++b) op.rate_kernel(a, b) = atoms[b].p;
    }
  } else {
    const double cap = cfg.rate_cap;
    if (!(cap > 0.0))
      throw ConfigError("solve_interest_model: rate grid requires a positive rate_cap");
    op.ni = cfg.rate_cells;
    op.rates.resize(op.ni);
    const double hi = cap / op.ni;
    op.rate_kernel.resize(op.ni, op.ni);
    op.rate_escape.resize(op.ni);
    for (int a = 0; a < op.ni; ++a) op.rates[a] = (a + 0.5) * hi;
    for (int a = 0; a < op.ni; ++a) {
      const double base = model.alpha() * op.rates[a];
      for (int b = 0; b < op.ni; ++b)
        op.rate_kernel(a, b) = noise.cdf((b + 1) * hi - base) - noise.cdf(b * hi - base);
      op.rate_escape(a) = 1.0 - noise.cdf(cap - base);
    }
  }

  const PremiumAtoms prem = premium_atoms(*model.premium());
  const Dist& claim = *model.claim();

  op.surplus_kernel.assign(op.ni, Eigen::MatrixXd(op.nz, op.nz));
  op.hit_target.resize(op.nz, op.ni);
  op.hit_absorb.resize(op.nz, op.ni);
  std::vector<double> edge_cdf(op.nz + 1);
  for (int a = 0; a < op.ni; ++a) {
    const double growth = 1.0 + op.rates[a];
    const double stay = 1.0 - op.rate_escape(a);
    Eigen::MatrixXd& t = op.surplus_kernel[a];
    for (int r = 0; r < op.nz; ++r) {
      double tz_target = 0.0, tz_ruin = 0.0;
      for (int c = 0; c <= op.nz; ++c) edge_cdf[c] = 0.0;
      for (size_t g = 0; g < prem.x.size(); ++g) {
        const double u = (op.mids[r] + prem.x[g]) * growth;
        const double pg = prem.p[g];
        tz_target += pg * claim.cdf(u - y);
        tz_ruin += pg * (1.0 - claim.cdf(u));
        for (int c = 0; c <= op.nz; ++c) edge_cdf[c] += pg * claim.cdf(u - c * h);
      }
      double row = tz_target + tz_ruin;
      for (int c = 0; c < op.nz; ++c) {
        const double mass = std::max(0.0, edge_cdf[c] - edge_cdf[c + 1]);
        t(r, c) = mass;
        row += mass;
      }
      op.row_defect = std::max(op.row_defect, std::abs(1.0 - row));
      op.hit_target(r, a) = op.rate_escape(a) + stay * tz_target;
      op.hit_absorb(r, a) = op.rate_escape(a) + stay * (tz_target + tz_ruin);
    }
  }
  return op;
}

ContractionCertificate best_certificate(const GridOperator& op, int m_max, double eps_iter) {
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(op.nz, op.ni);
  Eigen::MatrixXd next(op.nz, op.ni);
  ContractionCertificate best;
  long best_n = -1;
  for (int m = 1; m <= m_max; ++m) {
    op.sweep(v, op.hit_absorb, next);
    v.swap(next);
    const double delta = v.minCoeff();
    if (delta <= 0.0) continue;
    const ContractionCertificate cand{m, delta};
    const long n = cand.iterations_for(eps_iter);
    if (best_n < 0 || n < best_n) {
      best = cand;
      best_n = n;
    }
    if (best_n >= 0 && m > best_n) break;  // larger windows cannot win
  }
  if (best_n < 0)
    throw NoCertificate("solve_interest_model: no uniform absorption window found");
  return best;
}

}  // namespace

InterestGridFunction::InterestGridFunction(double y, std::vector<double> midpoints,
                                           std::vector<double> rates, Eigen::MatrixXd w)
    : y_(y), midpoints_(std::move(midpoints)), rates_(std::move(rates)), w_(std::move(w)) {
  if (w_.rows() != static_cast<long>(midpoints_.size()) ||
      w_.cols() != static_cast<long>(rates_.size()))
    throw std::invalid_argument("InterestGridFunction: shape mismatch");
}

int InterestGridFunction::rate_index(double rate) const {
  int best = 0;
  double dist = std::abs(rates_[0] - rate);
  for (size_t a = 1; a < rates_.size(); ++a) {
    const double d = std::abs(rates_[a] - rate);
    if (d < dist) {
      dist = d;
      best = static_cast<int>(a);
    }
  }
  return best;
}

double InterestGridFunction::evaluate(double z, int rate_idx) const {
  if (rate_idx < 0 || rate_idx >= static_cast<int>(rates_.size()))
    throw std::invalid_argument("InterestGridFunction: rate index out of range");
  if (z < 0.0) return 0.0;
  if (z > y_) return 1.0;
  const int n = static_cast<int>(midpoints_.size());
  const auto col = w_.col(rate_idx);
  // linear interpolation between midpoints, end segments extended
  int i = static_cast<int>(std::upper_bound(midpoints_.begin(), midpoints_.end(), z) -
                           midpoints_.begin()) - 1;
  i = std::clamp(i, 0, n - 2);
  const double t = (z - midpoints_[i]) / (midpoints_[i + 1] - midpoints_[i]);
  const double v = col(i) + t * (col(i + 1) - col(i));
  return std::clamp(v, 0.0, 1.0);
}

double InterestGridFunction::evaluate_at_rate(double z, double rate) const {
  return evaluate(z, rate_index(rate));
}

void InterestGridFunction::write_csv(std::ostream& out) const {
  out << "z,i,phi,one_minus_phi\n";
  char line[160];
  for (size_t a = 0; a < rates_.size(); ++a)
    for (size_t r = 0; r < midpoints_.size(); ++r) {
      const double phi = std::clamp(w_(r, a), 0.0, 1.0);
      std::snprintf(line, sizeof(line), "%.12g,%.12g,%.12g,%.12g\n", midpoints_[r],
                    rates_[a], phi, 1.0 - phi);
      out << line;
    }
}

std::pair<InterestGridFunction, InterestGridReport> solve_interest_model(
    const RiskModel& model, double y, const InterestGridConfig& config, double eps_iter) {
  if (!(eps_iter > 0.0))
    throw std::invalid_argument("solve_interest_model: eps_iter must be positive");
  const GridOperator op = build_operator(model, y, config);

  InterestGridReport report;
  report.surplus_cells = op.nz;
  report.rate_points = op.ni;
  report.row_defect = op.row_defect;
  report.certificate = best_certificate(op, config.m_max, eps_iter);
  report.iterations = report.certificate.iterations_for(eps_iter);
  report.iteration_error = report.certificate.error_bound(report.iterations);

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(op.nz, op.ni);
  Eigen::MatrixXd next(op.nz, op.ni);
  for (long k = 0; k < report.iterations; ++k) {
    op.sweep(w, op.hit_target, next);
    w.swap(next);
  }
  InterestGridFunction solution(y, op.mids, op.rates, std::move(w));

  if (config.richardson) {
    InterestGridConfig fine = config;
    fine.surplus_cells = 2 * config.surplus_cells;
    fine.richardson = false;
    const auto refined = solve_interest_model(model, y, fine, eps_iter);
    double diff = 0.0;
    const int probes = 41;
    for (int a = 0; a < op.ni; ++a)
      for (int k = 0; k < probes; ++k) {
        const double z = y * k / (probes - 1);
        diff = std::max(diff,
                        std::abs(solution.evaluate(z, a) - refined.first.evaluate(z, a)));
      }
    report.richardson_error = 2.0 * diff;
  }
  return {std::move(solution), report};
}

}  // namespace ruin
