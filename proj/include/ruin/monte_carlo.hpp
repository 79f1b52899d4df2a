#pragma once

#include <cstdint>
#include <utility>

#include "ruin/risk_model.hpp"

namespace ruin {

/// Binomial point estimate with a Clopper-Pearson interval.  Trials are
/// seeded per-index from (seed, trial), so estimates are bit-reproducible
/// and independent of evaluation order.
struct MCEstimate {
  double p_hat = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
  long hits = 0;
  long trials = 0;
  long horizon = 0;
  std::uint64_t seed = 0;

  double half_width() const { return 0.5 * (upper - lower); }
};

/// Exact (conservative) binomial confidence interval.
std::pair<double, double> clopper_pearson(long hits, long trials, double level = 0.95);

/// P(surplus drops strictly below 0 within `horizon` steps) from (z0, i0).
MCEstimate estimate_ruin(const RiskModel& model, double z0, double i0, long horizon,
                         long trials, std::uint64_t seed);

/// P(surplus exceeds y strictly before ruin, within `horizon` steps).
MCEstimate estimate_two_barrier(const RiskModel& model, double z0, double i0, double y,
                                long horizon, long trials, std::uint64_t seed);

/// Smallest horizon (doubling from 64) whose ruin estimate moved by less
/// than one CI half-width since the previous doubling.  The same trial
/// substreams are reused, so the estimate is nondecreasing in the horizon.
long horizon_sufficiency(const RiskModel& model, double z0, double i0, long trials,
                         std::uint64_t seed, long cap = 1L << 20);

}  // namespace ruin
