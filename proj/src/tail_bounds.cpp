#include "ruin/tail_bounds.hpp"

#include <algorithm>
#include <cmath>

#include "ruin/errors.hpp"

namespace ruin {

TailBound TailBound::lundberg(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("TailBound::lundberg: lambda must be positive");
  TailBound b;
  b.kind_ = Kind::kLundberg;
  b.lambda_ = lambda;
  b.name_ = "lundberg";
  return b;
}

TailBound TailBound::moment(double c, double gamma) {
  if (!(c > 0.0) || !(gamma > 1.0))
    throw std::invalid_argument("TailBound::moment: require c > 0 and gamma > 1");
  TailBound b;
  b.kind_ = Kind::kMoment;
  b.c_ = c;
  b.gamma_ = gamma;
  b.name_ = "moment";
  return b;
}

TailBound TailBound::closed_form(std::string name, std::function<double(double)> fn) {
  TailBound b;
  b.kind_ = Kind::kClosedForm;
  b.name_ = std::move(name);
  b.fn_ = std::move(fn);
  return b;
}

double TailBound::evaluate(double y) const {
  double v = 1.0;
  switch (kind_) {
    case Kind::kLundberg:
      v = std::exp(-lambda_ * std::max(0.0, y));
      break;
    case Kind::kMoment:
      v = (y <= 0.0) ? 1.0 : c_ * std::pow(y, 1.0 - gamma_);
      break;
    case Kind::kClosedForm:
      v = fn_(y);
      break;
  }
  return std::clamp(v, 0.0, 1.0);
}

double npc_drift(const Dist& premium, const Dist& claim) {
  const double g = premium.raw_moment(1).require_finite("E G");
  const double c = claim.raw_moment(1).require_finite("E C");
  return g - c;
}

double npc_drift(const Dist& increment) {
  return increment.raw_moment(1).require_finite("E eta");
}

namespace {

double lundberg_root(const std::function<ExtReal(double)>& m, double tol) {
  bool any_finite = false;
  for (double t : {1e-4, 1e-8, 1e-12})
    if (m(t).finite) { any_finite = true; break; }
  if (!any_finite)
    throw NoLundbergCoefficient(
        "lundberg_coefficient: E exp(-t eta) diverges for every t > 0 (heavy tail)");

  // Bisect on the predicate m(t) >= 1 (divergence counts as >= 1).  The
  // drift makes m(t) < 1 near 0, so a sign change brackets the root when
  // one exists.
  const auto above = [&](double t) {
    const ExtReal v = m(t);
    return !v.finite || v.value >= 1.0;
  };
  double lo = 1.0;
  double hi = 1.0;
  if (above(1.0)) {
    while (above(lo)) {
      lo *= 0.5;
      if (lo < 1e-300)
        throw ToleranceNotMet("lundberg_coefficient: could not bracket the root from below");
    }
  } else {
    while (!above(hi)) {
      hi *= 2.0;
      if (hi > 1e12)
        throw ToleranceNotMet(
            "lundberg_coefficient: m(t) stays below 1; no adjustment coefficient");
    }
    lo = hi * 0.5;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, lo); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (above(mid)) hi = mid; else lo = mid;
  }
  const ExtReal at_root = m(lo);
  if (!at_root.finite || std::abs(at_root.value - 1.0) > std::max(tol, 1e-9))
    throw ToleranceNotMet(
        "lundberg_coefficient: m jumps to divergence before reaching 1 (boundary case)");
  return lo;
}

}  // namespace

double lundberg_coefficient(const Dist& increment, double tol) {
  if (!(npc_drift(increment) > 0.0))
    throw NoDrift("lundberg_coefficient: drift E eta must be positive");
  return lundberg_root([&](double t) { return increment.exp_moment(-t); }, tol);
}

double lundberg_coefficient(const Dist& premium, const Dist& claim, double tol) {
  if (!(npc_drift(premium, claim) > 0.0))
    throw NoDrift("lundberg_coefficient: drift E(G - C) must be positive");
  return lundberg_root(
      [&](double t) {
        const ExtReal g = premium.exp_moment(-t);
        const ExtReal c = claim.exp_moment(t);
        if (!g.finite || !c.finite) return ExtReal::infinite();
        return ExtReal::of(g.value * c.value);
      },
      tol);
}

TailBound lundberg_bound(double lambda) { return TailBound::lundberg(lambda); }

namespace {

struct KorshunovInputs {
  double a;                                         // drift
  double e2;                                        // E (G - C)^2
  std::function<double(double)> expect_min;         // s -> E min(G - C, s)
  std::function<double(double)> expect_c1;          // gamma -> E C^{g-2} (G-C)^2
  std::function<double(double, double)> expect_c2;  // (s3, gamma) -> E (s3+C)^{g-1} C
};

double smallest_s1(const std::function<double(double)>& expect_min, double a) {
  // smallest grid value s = k/1000 with E min(eta, s) >= 2a/3; the target
  // is positive and E min(eta, s) -> a, so the search terminates
  const double target = 2.0 * a / 3.0;
  const double grid = 1e-3;
  long k_lo = static_cast<long>(std::ceil(target / grid));
  long k_hi = k_lo;
  int guard = 0;
  while (expect_min(k_hi * grid) < target) {
    k_lo = k_hi + 1;
    k_hi = std::max<long>(2 * k_hi, k_hi + 1000);
    if (++guard > 60) throw ToleranceNotMet("korshunov_constants: s1 search failed");
  }
  while (k_lo < k_hi) {
    const long mid = k_lo + (k_hi - k_lo) / 2;
    if (expect_min(mid * grid) >= target) k_hi = mid; else k_lo = mid + 1;
  }
  return k_hi * grid;
}

KorshunovConstants assemble(const KorshunovInputs& in, double gamma,
                            std::optional<double> s1_choice) {
  if (!(gamma >= 2.0))
    throw std::invalid_argument("korshunov_constants: gamma must be >= 2");
  if (!(in.a > 0.0)) throw NoDrift("korshunov_constants: drift must be positive");

  KorshunovConstants k;
  k.gamma = gamma;
  k.a = in.a;
  if (s1_choice) {
    if (in.expect_min(*s1_choice) < 2.0 * in.a / 3.0 - 1e-12)
      throw ToleranceNotMet("korshunov_constants: supplied s1 violates E min(eta, s1) >= 2a/3");
    k.s1 = *s1_choice;
  } else {
    k.s1 = smallest_s1(in.expect_min, in.a);
  }
  k.s2 = std::pow(2.0, gamma - 1.0) * ((gamma - 1.0) / in.a) * in.e2;
  k.s3 = std::max(k.s1, k.s2);
  k.c1 = gamma * (gamma - 1.0) * std::pow(2.0, gamma - 3.0) *
         (gamma == 2.0 ? in.e2 : in.expect_c1(gamma));
  k.c2 = gamma * in.expect_c2(k.s3, gamma);
  k.c = 3.0 * std::max(k.c1, k.c2) / (in.a * gamma) + 0.5 * std::pow(k.s3, gamma - 1.0);
  return k;
}

}  // namespace

KorshunovConstants korshunov_constants(const Dist& premium, const Dist& claim, double gamma,
                                       std::optional<double> s1_choice) {
  if (!premium.abs_moment(gamma).finite || !claim.abs_moment(gamma).finite)
    throw InfiniteMoment(
        "korshunov_constants: E|G - C|^gamma is infinite; truncate premiums first");
  KorshunovInputs in;
  in.a = npc_drift(premium, claim);
  const double g1 = premium.raw_moment(1).value, g2 = premium.raw_moment(2).value;
  const double c1m = claim.raw_moment(1).value, c2m = claim.raw_moment(2).value;
  in.e2 = g2 - 2.0 * g1 * c1m + c2m;
  in.expect_min = [&premium, &claim](double s) {
    return expect_pair(premium, claim,
                       [s](double g, double c) { return std::min(g - c, s); });
  };
  in.expect_c1 = [&premium, &claim](double gm) {
    return expect_pair(premium, claim, [gm](double g, double c) {
      return std::pow(c, gm - 2.0) * (g - c) * (g - c);
    });
  };
  in.expect_c2 = [&premium, &claim](double s3, double gm) {
    return expect_pair(premium, claim, [s3, gm](double g, double c) {
      (void)g;
      return std::pow(s3 + c, gm - 1.0) * c;
    });
  };
  return assemble(in, gamma, s1_choice);
}

KorshunovConstants korshunov_constants(const Dist& increment, double gamma,
                                       std::optional<double> s1_choice) {
  if (!increment.abs_moment(gamma).finite)
    throw InfiniteMoment("korshunov_constants: E|eta|^gamma is infinite");
  KorshunovInputs in;
  in.a = npc_drift(increment);
  in.e2 = increment.raw_moment(2).require_finite("E eta^2");
  // split eta = G - C with G = max(eta, 0), C = max(-eta, 0): a coupled
  // pair with the right marginals turning the mixed moments into
  // expectations over eta alone
  in.expect_min = [&increment](double s) {
    return expect(increment, [s](double e) { return std::min(e, s); });
  };
  in.expect_c1 = [&increment](double gm) {
    return expect(increment, [gm](double e) {
      const double c = std::max(-e, 0.0);
      return std::pow(c, gm - 2.0) * e * e;
    });
  };
  in.expect_c2 = [&increment](double s3, double gm) {
    return expect(increment, [s3, gm](double e) {
      const double c = std::max(-e, 0.0);
      return std::pow(s3 + c, gm - 1.0) * c;
    });
  };
  return assemble(in, gamma, s1_choice);
}

KorshunovConstants korshunov_constants_truncated(const Dist& premium, const Dist& claim,
                                                 double gamma, double k,
                                                 std::optional<double> s1_choice) {
  if (!(k > 0.0))
    throw std::invalid_argument("korshunov_constants_truncated: k must be positive");
  if (!claim.abs_moment(gamma).finite)
    throw InfiniteMoment("korshunov_constants_truncated: E C^gamma is infinite");
  const auto cap = [k](double g) { return std::min(k, g); };
  KorshunovInputs in;
  const double g1 = expect(premium, cap);
  const double g2 = expect(premium, [&](double g) { return cap(g) * cap(g); });
  const double c1m = claim.raw_moment(1).value, c2m = claim.raw_moment(2).value;
  in.a = g1 - c1m;
  in.e2 = g2 - 2.0 * g1 * c1m + c2m;
  in.expect_min = [&premium, &claim, cap](double s) {
    return expect_pair(premium, claim,
                       [s, cap](double g, double c) { return std::min(cap(g) - c, s); });
  };
  in.expect_c1 = [&premium, &claim, cap](double gm) {
    return expect_pair(premium, claim, [gm, cap](double g, double c) {
      const double e = cap(g) - c;
      return std::pow(c, gm - 2.0) * e * e;
    });
  };
  in.expect_c2 = [&premium, &claim](double s3, double gm) {
    return expect_pair(premium, claim, [s3, gm](double g, double c) {
      (void)g;
      return std::pow(s3 + c, gm - 1.0) * c;
    });
  };
  return assemble(in, gamma, s1_choice);
}

TailBound korshunov_bound(const KorshunovConstants& k) {
  return TailBound::moment(k.c, k.gamma);
}

double truncation_level(const Dist& premium, const Dist& claim) {
  const double a = npc_drift(premium, claim);
  if (!(a > 0.0)) throw NoDrift("truncation_level: drift must be positive");
  const double ec = claim.raw_moment(1).value;
  for (int j = 0; j <= 40; ++j) {
    const double k = std::pow(2.0, j);
    const double truncated =
        expect(premium, [k](double g) { return std::min(k, g); }) - ec;
    if (truncated >= 0.5 * a) return k;
  }
  throw ToleranceNotMet("truncation_level: no truncation level up to 2^40");
}

double barrier_for_precision(const TailBound& bound, double eps_tail) {
  if (!(eps_tail > 0.0 && eps_tail < 1.0))
    throw std::invalid_argument("barrier_for_precision: eps_tail must be in (0,1)");
  switch (bound.kind()) {
    case TailBound::Kind::kLundberg:
      return std::log(1.0 / eps_tail) / bound.lambda();
    case TailBound::Kind::kMoment:
      return std::pow(bound.c() / eps_tail, 1.0 / (bound.gamma() - 1.0));
    case TailBound::Kind::kClosedForm:
      break;
  }
  if (bound.evaluate(0.0) <= eps_tail) return 0.0;
  double lo = 0.0, hi = 1.0;
  int guard = 0;
  while (bound.evaluate(hi) > eps_tail) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 60)
      throw ToleranceNotMet("barrier_for_precision: bound does not reach eps_tail");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (bound.evaluate(mid) <= eps_tail) hi = mid; else lo = mid;
  }
  return hi;
}

TailBound yang_bound() {
  return TailBound::closed_form("yang", [](double y) {
    return std::pow(1.0 + 0.1 * std::max(0.0, y), -0.1) * std::exp(-std::max(0.0, y));
  });
}

double interest_tail_term(double y, double j, double beta,
                          const std::function<double(double)>& premium_cdf, double m1) {
  if (!(j > 0.0)) throw std::invalid_argument("interest_tail_term: j must be positive");
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("interest_tail_term: beta must be in (0,1)");
  if (premium_cdf(0.0) > 0.0)
    throw PositiveMassAtZeroPremium(
        "interest_tail_term: F_G(0) > 0, the rate-truncation term cannot vanish");
  return std::pow(j, -beta) + premium_cdf(y / j + m1 * std::pow(j, beta - 1.0));
}

double interest_bound_rhs(const TailBound& bound, double y, double j, double beta,
                          const std::function<double(double)>& premium_cdf, double m1) {
  return bound.evaluate(y) + interest_tail_term(y, j, beta, premium_cdf, m1);
}

}  // namespace ruin
