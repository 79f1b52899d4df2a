#pragma once

#include <functional>
#include <optional>
#include <string>

#include "ruin/distributions.hpp"

namespace ruin {

/// Certified upper bound on the ruin probability as a function of the
/// initial surplus.  evaluate() is nonincreasing, clamped to [0, 1], and
/// tends to 0.
class TailBound {
 public:
  enum class Kind { kLundberg, kMoment, kClosedForm };

  static TailBound lundberg(double lambda);
  static TailBound moment(double c, double gamma);
  static TailBound closed_form(std::string name, std::function<double(double)> fn);

  Kind kind() const { return kind_; }
  double lambda() const { return lambda_; }
  double c() const { return c_; }
  double gamma() const { return gamma_; }
  const std::string& name() const { return name_; }

  double evaluate(double y) const;

 private:
  TailBound() = default;

  Kind kind_ = Kind::kClosedForm;
  double lambda_ = 0.0, c_ = 0.0, gamma_ = 0.0;
  std::string name_;
  std::function<double(double)> fn_;
};

/// Net profit condition drift a = E(G - C) (resp. E eta).  Throws
/// InfiniteMoment when a mean diverges.
double npc_drift(const Dist& premium, const Dist& claim);
double npc_drift(const Dist& increment);

/// Adjustment coefficient: the positive root of m(t) = E exp(-t eta) = 1.
/// NoLundbergCoefficient when m is infinite for every t > 0 (heavy tails),
/// ToleranceNotMet when no root can be bracketed to tolerance (e.g. m stays
/// below 1 up to the divergence point).
double lundberg_coefficient(const Dist& increment, double tol = 1e-10);

/// Same for an independent pair, using m(t) = E e^{-tG} E e^{tC}.
double lundberg_coefficient(const Dist& premium, const Dist& claim, double tol = 1e-10);

TailBound lundberg_bound(double lambda);

/// Constants of the moment tail bound c y^{1-gamma}:
///   a  = E(G - C)
///   s1 : any real with E min(G - C, s1) >= (2/3) a (smallest on a 1e-3
///        grid by default; s1_choice overrides after validation)
///   s2 = 2^{gamma-1} ((gamma-1)/a) E (G - C)^2
///   s3 = max(s1, s2)
///   c1 = gamma (gamma-1) 2^{gamma-3} E[C^{gamma-2} (G - C)^2]
///   c2 = gamma E[(s3 + C)^{gamma-1} C]
///   c  = 3 max(c1, c2) / (a gamma) + s3^{gamma-1} / 2
struct KorshunovConstants {
  double gamma = 0.0, a = 0.0;
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  double c1 = 0.0, c2 = 0.0, c = 0.0;
};

KorshunovConstants korshunov_constants(const Dist& premium, const Dist& claim, double gamma,
                                       std::optional<double> s1_choice = {});

/// Same constants from the increment law alone, splitting eta into its
/// positive part as premium and negative part as claim (they are coupled,
/// not independent; every expectation above is a function of eta only).
KorshunovConstants korshunov_constants(const Dist& increment, double gamma,
                                       std::optional<double> s1_choice = {});

/// Constants with the premium truncated at k: every expectation uses
/// min(k, G) in place of G.  Ruin in the truncated model dominates ruin in
/// the original, so the resulting bound still covers psi.  Requires
/// E C^gamma < inf; use truncation_level() to pick k.
KorshunovConstants korshunov_constants_truncated(const Dist& premium, const Dist& claim,
                                                 double gamma, double k,
                                                 std::optional<double> s1_choice = {});

TailBound korshunov_bound(const KorshunovConstants& k);

/// Premium truncation level for E G^2 = inf: smallest power of two k with
/// E min(k, G) - E C >= a/2, a the untruncated drift.
double truncation_level(const Dist& premium, const Dist& claim);

/// Smallest y with bound.evaluate(y) <= eps_tail (analytic inversion for
/// the parametric kinds, bisection for closed forms).
double barrier_for_precision(const TailBound& bound, double eps_tail);

/// (1 + 0.1 y)^{-0.1} e^{-y}: published closed-form bound for the
/// constant-premium / GIG-claim case study.
TailBound yang_bound();

/// Rate-truncation tail term for the interest model:
///   j^{-beta} + F_G(y/j + m1 / j^{1-beta}),  m1 = E|G - C|.
/// Throws PositiveMassAtZeroPremium when F_G(0) > 0, since then the term
/// cannot vanish as j grows.
double interest_tail_term(double y, double j, double beta,
                          const std::function<double(double)>& premium_cdf, double m1);

/// Full right-hand side of the interest-model error bound:
/// bound(y) + interest_tail_term(y, j, ...).
double interest_bound_rhs(const TailBound& bound, double y, double j, double beta,
                          const std::function<double(double)>& premium_cdf, double m1);

}  // namespace ruin
