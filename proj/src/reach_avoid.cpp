#include "ruin/reach_avoid.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "ruin/errors.hpp"

namespace ruin {

namespace {

void check_mask(const FiniteChain& chain, const StateMask& m, const char* name) {
  if (static_cast<int>(m.size()) != chain.size())
    throw std::invalid_argument(std::string(name) + ": mask size mismatch");
}

/// States from which `target` is reachable through `through` states only
/// (target states themselves are always included).
StateMask backward_reachable(const FiniteChain& chain, const StateMask& target,
                             const StateMask& through) {
  const auto& p = chain.transition();
  const int n = chain.size();
  StateMask seen(n, 0);
  std::deque<int> queue;
  for (int i = 0; i < n; ++i)
    if (target[i]) {
      seen[i] = 1;
      queue.push_back(i);
    }
  while (!queue.empty()) {
    const int j = queue.front();
    queue.pop_front();
    for (int i = 0; i < n; ++i) {
      if (seen[i] || target[i] || !through[i]) continue;
      if (p(i, j) > 0.0) {
        seen[i] = 1;
        queue.push_back(i);
      }
    }
  }
  return seen;
}

/// Hitting probabilities of `target` restricted to moving through `allowed`.
/// Solves (I - P_SS) x_S = P row-sums into target, S the states that can
/// still reach the target.
Eigen::VectorXd constrained_limit(const FiniteChain& chain, const StateMask& allowed,
                                  const StateMask& target) {
  const auto& p = chain.transition();
  const int n = chain.size();
  StateMask through(n, 0);
  for (int i = 0; i < n; ++i) through[i] = allowed[i] && !target[i];
  const StateMask can_reach = backward_reachable(chain, target, through);

  std::vector<int> solve_states;
  std::vector<int> index_of(n, -1);
  for (int i = 0; i < n; ++i)
    if (through[i] && can_reach[i]) {
      index_of[i] = static_cast<int>(solve_states.size());
      solve_states.push_back(i);
    }

  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i)
    if (target[i]) out(i) = 1.0;
  const int s = static_cast<int>(solve_states.size());
  if (s == 0) return out;

  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(s, s);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(s);
  for (int r = 0; r < s; ++r) {
    const int i = solve_states[r];
    for (int j = 0; j < n; ++j) {
      const double pij = p(i, j);
      if (pij == 0.0) continue;
      if (target[j]) {
        b(r) += pij;
      } else if (index_of[j] >= 0) {
        a(r, index_of[j]) -= pij;
      }
    }
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14))
    throw SingularSystem("reach limit: transient block is numerically singular");
  Eigen::VectorXd x = lu.solve(b);
  for (int r = 0; r < s; ++r) out(solve_states[r]) = std::clamp(x(r), 0.0, 1.0);
  return out;
}

}  // namespace

Eigen::VectorXd reach_probability(const FiniteChain& chain, const StateMask& target, long n) {
  check_mask(chain, target, "reach_probability");
  const auto& p = chain.transition();
  const int size = chain.size();
  Eigen::VectorXd v = Eigen::VectorXd::Zero(size);
  for (int i = 0; i < size; ++i)
    if (target[i]) v(i) = 1.0;
  Eigen::VectorXd next(size);
  for (long k = 0; k < n; ++k) {
    next.noalias() = p * v;
    for (int i = 0; i < size; ++i)
      if (target[i]) next(i) = 1.0;
    v.swap(next);
  }
  return v;
}

Eigen::VectorXd reach_avoid_probability(const FiniteChain& chain, const StateMask& allowed,
                                        const StateMask& target, long n) {
  check_mask(chain, allowed, "reach_avoid_probability");
  check_mask(chain, target, "reach_avoid_probability");
  const auto& p = chain.transition();
  const int size = chain.size();
  Eigen::VectorXd w = Eigen::VectorXd::Zero(size);
  for (int i = 0; i < size; ++i)
    if (target[i]) w(i) = 1.0;
  Eigen::VectorXd next(size);
  for (long k = 0; k < n; ++k) {
    next.noalias() = p * w;
    for (int i = 0; i < size; ++i) {
      if (target[i])
        next(i) = 1.0;
      else if (!allowed[i])
        next(i) = 0.0;
    }
    w.swap(next);
  }
  return w;
}

Eigen::VectorXd reach_limit(const FiniteChain& chain, const StateMask& target) {
  check_mask(chain, target, "reach_limit");
  StateMask allowed(chain.size(), 1);
  return constrained_limit(chain, allowed, target);
}

Eigen::VectorXd reach_avoid_limit(const FiniteChain& chain, const StateMask& allowed,
                                  const StateMask& target) {
  check_mask(chain, allowed, "reach_avoid_limit");
  check_mask(chain, target, "reach_avoid_limit");
  return constrained_limit(chain, allowed, target);
}

double ContractionCertificate::error_bound(long n) const {
  if (m <= 0 || delta <= 0.0) return std::numeric_limits<double>::infinity();
  const long q = n / m;
  return (m / delta) * std::pow(1.0 - delta, static_cast<double>(q));
}

long ContractionCertificate::iterations_for(double eps) const {
  if (m <= 0 || delta <= 0.0 || !(eps > 0.0))
    throw NoCertificate("iterations_for: invalid certificate or tolerance");
  if (m / delta <= eps) return 0;
  if (delta >= 1.0) return m;
  const double q = std::ceil(std::log(eps * delta / m) / std::log1p(-delta));
  return static_cast<long>(q) * m;
}

ContractionCertificate contraction_certificate(const FiniteChain& chain,
                                               const StateMask& absorbing, int m_max) {
  check_mask(chain, absorbing, "contraction_certificate");
  const auto& p = chain.transition();
  const int size = chain.size();
  // u holds P(absorbed within m transitions); start at m = 0
  Eigen::VectorXd u = Eigen::VectorXd::Zero(size);
  for (int i = 0; i < size; ++i)
    if (absorbing[i]) u(i) = 1.0;
  Eigen::VectorXd next(size);
  for (int m = 1; m <= m_max; ++m) {
    next.noalias() = p * u;
    for (int i = 0; i < size; ++i)
      if (absorbing[i]) next(i) = 1.0;
    u.swap(next);
    const double delta = u.minCoeff();
    if (delta > 0.0) return {m, delta};
  }
  throw NoCertificate("contraction_certificate: no uniform absorption within m_max steps");
}

ContractionCertificate tuned_certificate(const FiniteChain& chain, const StateMask& absorbing,
                                         int m_max, double eps) {
  check_mask(chain, absorbing, "tuned_certificate");
  const auto& p = chain.transition();
  const int size = chain.size();
  Eigen::VectorXd u = Eigen::VectorXd::Zero(size);
  for (int i = 0; i < size; ++i)
    if (absorbing[i]) u(i) = 1.0;
  Eigen::VectorXd next(size);
  ContractionCertificate best;
  long best_n = -1;
  for (int m = 1; m <= m_max; ++m) {
    next.noalias() = p * u;
    for (int i = 0; i < size; ++i)
      if (absorbing[i]) next(i) = 1.0;
    u.swap(next);
    const double delta = u.minCoeff();
    if (delta <= 0.0) continue;
    const ContractionCertificate cand{m, delta};
    const long n = cand.iterations_for(eps);
    if (best_n < 0 || n < best_n) {
      best = cand;
      best_n = n;
    }
  }
  if (best_n < 0)
    throw NoCertificate("tuned_certificate: no uniform absorption within m_max steps");
  return best;
}

}  // namespace ruin
