#include "ruin/monte_carlo.hpp"

#include <boost/math/distributions/beta.hpp>
#include <cmath>

#include "ruin/errors.hpp"
#include "ruin/rng.hpp"

namespace ruin {

std::pair<double, double> clopper_pearson(long hits, long trials, double level) {
  if (trials <= 0 || hits < 0 || hits > trials)
    throw ConfigError("clopper_pearson: need 0 <= hits <= trials, trials > 0");
  if (!(level > 0.0 && level < 1.0))
    throw ConfigError("clopper_pearson: level must lie in (0,1)");
  const double alpha = 1.0 - level;
  double lo = 0.0, hi = 1.0;
  if (hits > 0) {
    boost::math::beta_distribution<double> b(double(hits), double(trials - hits + 1));
    lo = quantile(b, alpha / 2.0);
  }
  if (hits < trials) {
    boost::math::beta_distribution<double> b(double(hits + 1), double(trials - hits));
    hi = quantile(b, 1.0 - alpha / 2.0);
  }
  return {lo, hi};
}

namespace {

enum class Outcome { kRuin, kTarget, kNeither };

// Runs one trajectory until ruin, the upper barrier (if tracked), or the
// horizon.  The barrier wins ties; every step consumes the same number of
// uniforms regardless of state so that common random numbers couple paths
// started from different capitals.
Outcome run_trial(const RiskModel& model, Rng& rng, double z0, double i0, double y,
                  bool track_target, long horizon) {
  ModelState state{z0, model.has_interest() ? i0 : 0.0};
  for (long n = 0;; ++n) {
    if (track_target && state.surplus >= y) return Outcome::kTarget;
    if (state.surplus < 0.0) return Outcome::kRuin;
    if (n == horizon) return Outcome::kNeither;
    state = step(model, state, draw_noise(model, rng));
  }
}

MCEstimate estimate(const RiskModel& model, double z0, double i0, double y,
                    bool track_target, long horizon, long trials, std::uint64_t seed) {
  if (trials <= 0) throw ConfigError("monte carlo: trials must be positive");
  if (horizon < 0) throw ConfigError("monte carlo: horizon must be nonnegative");
  MCEstimate est;
  est.trials = trials;
  est.horizon = horizon;
  est.seed = seed;
  const Outcome counted = track_target ? Outcome::kTarget : Outcome::kRuin;
  for (long t = 0; t < trials; ++t) {
    Rng rng = Rng::substream(seed, std::uint64_t(t));
    if (run_trial(model, rng, z0, i0, y, track_target, horizon) == counted) ++est.hits;
  }
  est.p_hat = double(est.hits) / double(trials);
  std::tie(est.lower, est.upper) = clopper_pearson(est.hits, trials, est.level);
  return est;
}

}  // namespace

MCEstimate estimate_ruin(const RiskModel& model, double z0, double i0, long horizon,
                         long trials, std::uint64_t seed) {
  return estimate(model, z0, i0, 0.0, false, horizon, trials, seed);
}

MCEstimate estimate_two_barrier(const RiskModel& model, double z0, double i0, double y,
                                long horizon, long trials, std::uint64_t seed) {
  if (!(y > 0.0)) throw ConfigError("monte carlo: barrier must be positive");
  return estimate(model, z0, i0, y, true, horizon, trials, seed);
}

long horizon_sufficiency(const RiskModel& model, double z0, double i0, long trials,
                         std::uint64_t seed, long cap) {
  MCEstimate prev = estimate_ruin(model, z0, i0, 64, trials, seed);
  for (long horizon = 128; horizon <= cap; horizon *= 2) {
    const MCEstimate cur = estimate_ruin(model, z0, i0, horizon, trials, seed);
    if (std::abs(cur.p_hat - prev.p_hat) < cur.half_width()) return horizon;
    prev = cur;
  }
  throw NonConvergent("horizon_sufficiency: estimate still drifting at the horizon cap");
}

}  // namespace ruin
