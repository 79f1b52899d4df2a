#pragma once

#include "ruin/finite_chain.hpp"

namespace ruin {

/// P(hit `target` within n steps), one entry per state.  Computed by the
/// value recursion v_{k+1} = 1_T + 1_{T^c} P v_k, so entries are monotone
/// nondecreasing in n.
Eigen::VectorXd reach_probability(const FiniteChain& chain, const StateMask& target, long n);

/// P(hit `target` while staying inside `allowed` until then, within n
/// steps).  States outside `allowed` (and not in `target`) contribute 0.
Eigen::VectorXd reach_avoid_probability(const FiniteChain& chain, const StateMask& allowed,
                                        const StateMask& target, long n);

/// Infinite-horizon limits by exact linear solve on the transient block.
/// States that cannot reach the target get probability 0; on the rest
/// (I - P_SS) is nonsingular by construction.
Eigen::VectorXd reach_limit(const FiniteChain& chain, const StateMask& target);
Eigen::VectorXd reach_avoid_limit(const FiniteChain& chain, const StateMask& allowed,
                                  const StateMask& target);

/// Uniform m-step absorption certificate: every state enters `absorbing`
/// within m steps with probability >= delta.  Then the value iteration gap
/// after n sweeps is at most (m/delta)(1-delta)^{floor(n/m)}.
struct ContractionCertificate {
  int m = 0;
  double delta = 0.0;

  double error_bound(long n) const;
  /// Smallest sweep count (multiple of m) with error_bound <= eps.
  long iterations_for(double eps) const;
};

/// Smallest window m <= m_max with strictly positive uniform absorption.
ContractionCertificate contraction_certificate(const FiniteChain& chain,
                                               const StateMask& absorbing, int m_max);

/// Window choice minimizing the predicted sweep count for accuracy eps;
/// falls back to the smallest feasible window when none improves on it.
ContractionCertificate tuned_certificate(const FiniteChain& chain, const StateMask& absorbing,
                                         int m_max, double eps);

}  // namespace ruin
