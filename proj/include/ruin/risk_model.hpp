#pragma once

#include "ruin/distributions.hpp"
#include "ruin/rng.hpp"

namespace ruin {

/// State of the surplus process: reserve level plus, for the interest
/// variant, the current rate.
struct ModelState {
  double surplus = 0.0;
  double interest = 0.0;
};

/// One period's random draws.  Kept explicit so callers can advance coupled
/// paths on common random numbers.
struct ModelNoise {
  double premium = 0.0;
  double claim = 0.0;
  double interest = 0.0;
};

/// Discrete-time surplus recursion.  Plain variant: Z' = Z + G - C.
/// Interest variant: Z' = (Z + G)(1 + I) - C with the current rate I, which
/// then evolves as I' = alpha I + W.
class RiskModel {
 public:
  enum class Kind { kCramerLundberg, kInterest };

  static RiskModel cramer_lundberg(DistPtr premium, DistPtr claim);
  /// Plain variant specified directly by the increment law eta = G - C.
  static RiskModel cramer_lundberg_increment(DistPtr increment);
  static RiskModel with_interest(DistPtr premium, DistPtr claim, double alpha,
                                 DistPtr interest_noise);

  Kind kind() const { return kind_; }
  bool has_interest() const { return kind_ == Kind::kInterest; }

  const DistPtr& premium() const { return premium_; }
  const DistPtr& claim() const { return claim_; }
  double alpha() const { return alpha_; }
  const DistPtr& interest_noise() const { return interest_noise_; }

  /// Law of the one-step surplus increment for the plain variant.  Derived
  /// from (G, C) when one of them is degenerate or both are discrete.
  DistPtr increment() const;

 private:
  RiskModel() = default;

  Kind kind_ = Kind::kCramerLundberg;
  DistPtr premium_, claim_;
  DistPtr increment_;
  double alpha_ = 0.0;
  DistPtr interest_noise_;
};

ModelNoise draw_noise(const RiskModel& model, Rng& rng);

ModelState step(const RiskModel& model, const ModelState& state, const ModelNoise& noise);

}  // namespace ruin
