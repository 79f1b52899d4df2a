#include "ruin/risk_model.hpp"

#include <algorithm>
#include <cmath>

#include "ruin/errors.hpp"

namespace ruin {

RiskModel RiskModel::cramer_lundberg(DistPtr premium, DistPtr claim) {
  if (!premium || !claim) throw ConfigError("cramer_lundberg: null law");
  RiskModel m;
  m.kind_ = Kind::kCramerLundberg;
  m.premium_ = std::move(premium);
  m.claim_ = std::move(claim);
  return m;
}

RiskModel RiskModel::cramer_lundberg_increment(DistPtr increment) {
  if (!increment) throw ConfigError("cramer_lundberg_increment: null law");
  RiskModel m;
  m.kind_ = Kind::kCramerLundberg;
  m.increment_ = std::move(increment);
  return m;
}

RiskModel RiskModel::with_interest(DistPtr premium, DistPtr claim, double alpha,
                                   DistPtr interest_noise) {
  if (!premium || !claim || !interest_noise) throw ConfigError("with_interest: null law");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw ConfigError("with_interest: alpha must be in [0,1)");
  if (premium->support().lo < 0.0) throw ConfigError("with_interest: premiums must be >= 0");
  if (claim->support().lo < 0.0) throw ConfigError("with_interest: claims must be >= 0");
  if (interest_noise->support().lo < 0.0)
    throw ConfigError("with_interest: rate noise must be >= 0");
  RiskModel m;
  m.kind_ = Kind::kInterest;
  m.premium_ = std::move(premium);
  m.claim_ = std::move(claim);
  m.alpha_ = alpha;
  m.interest_noise_ = std::move(interest_noise);
  return m;
}

DistPtr RiskModel::increment() const {
  if (kind_ != Kind::kCramerLundberg)
    throw ConfigError("increment: interest variant has no state-free increment law");
  if (increment_) return increment_;
  const bool g_deg = premium_->is_discrete() && premium_->atoms().size() == 1;
  const bool c_deg = claim_->is_discrete() && claim_->atoms().size() == 1;
  if (g_deg) {
    const double g = premium_->atoms().front().x;
    return std::make_shared<AffineDist>(g, -1.0, claim_);
  }
  if (c_deg) {
    const double c = claim_->atoms().front().x;
    return std::make_shared<AffineDist>(-c, 1.0, premium_);
  }
  if (premium_->is_discrete() && claim_->is_discrete()) {
    std::vector<Atom> atoms;
    for (const Atom& g : premium_->atoms())
      for (const Atom& c : claim_->atoms()) atoms.push_back({g.x - c.x, g.p * c.p});
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });
    std::vector<Atom> merged;
    for (const Atom& a : atoms) {
      if (!merged.empty() && merged.back().x == a.x) merged.back().p += a.p;
      else merged.push_back(a);
    }
    return std::make_shared<FiniteDiscreteDist>(std::move(merged));
  }
  throw ConfigError("increment: no increment law for a continuous premium/claim pair");
}

ModelNoise draw_noise(const RiskModel& model, Rng& rng) {
  ModelNoise n;
  if (model.kind() == RiskModel::Kind::kCramerLundberg && !model.premium()) {
    n.premium = model.increment()->sample(rng);
    n.claim = 0.0;
    return n;
  }
  n.premium = model.premium()->sample(rng);
  n.claim = model.claim()->sample(rng);
  if (model.has_interest()) n.interest = model.interest_noise()->sample(rng);
  return n;
}

ModelState step(const RiskModel& model, const ModelState& state, const ModelNoise& noise) {
  if (!model.has_interest())
    return {state.surplus + noise.premium - noise.claim, 0.0};
  // current rate compounds this period's surplus, then the rate evolves
  const double z_next =
      (state.surplus + noise.premium) * (1.0 + state.interest) - noise.claim;
  const double rate_next = model.alpha() * state.interest + noise.interest;
  return {z_next, rate_next};
}

}  // namespace ruin
