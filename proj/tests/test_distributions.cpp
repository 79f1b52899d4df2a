#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "ruin/distributions.hpp"
#include "ruin/errors.hpp"
#include "ruin/rng.hpp"

using namespace ruin;

namespace {

// one-sample Kolmogorov-Smirnov statistic against the law's own cdf
double ks_statistic(const Dist& d, int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> xs(n);
  for (double& x : xs) x = d.sample(rng);
  std::sort(xs.begin(), xs.end());
  double sup = 0.0;
  for (int i = 0; i < n; ++i) {
    double f = d.cdf(xs[i]);
    sup = std::max(sup, std::max(f - double(i) / n, double(i + 1) / n - f));
  }
  return sup;
}

}  // namespace

TEST_CASE("degenerate law", "[distributions]") {
  DegenerateDist d(1.3035);
  REQUIRE(d.cdf(1.3034) == 0.0);
  REQUIRE(d.cdf(1.3035) == 1.0);
  REQUIRE(d.atoms().size() == 1);
  REQUIRE(d.raw_moment(2).value == Catch::Approx(1.3035 * 1.3035));
  REQUIRE(d.exp_moment(-1.0).value == Catch::Approx(std::exp(-1.3035)));
  Rng rng(1);
  REQUIRE(d.sample(rng) == 1.3035);
}

TEST_CASE("finite discrete law", "[distributions]") {
  FiniteDiscreteDist d({{1.0, 0.75}, {-1.0, 0.25}});  // sorted on construction
  REQUIRE(d.atoms().front().x == -1.0);
  REQUIRE(d.cdf(-1.0) == 0.25);
  REQUIRE(d.cdf(0.0) == 0.25);
  REQUIRE(d.cdf(1.0) == 1.0);
  REQUIRE(d.quantile(0.25) == -1.0);
  REQUIRE(d.quantile(0.2500001) == 1.0);
  REQUIRE(d.quantile(0.99) == 1.0);
  REQUIRE(d.raw_moment(1).value == Catch::Approx(0.5));
  REQUIRE(d.exp_moment(2.0).value ==
          Catch::Approx(0.25 * std::exp(-2.0) + 0.75 * std::exp(2.0)).epsilon(1e-14));

  REQUIRE_THROWS_AS(FiniteDiscreteDist({{0.0, 0.5}, {1.0, 0.6}}), std::invalid_argument);
  REQUIRE_THROWS_AS(FiniteDiscreteDist({{0.0, -0.1}, {1.0, 1.1}}), std::invalid_argument);
}

TEST_CASE("uniform, exponential and gaussian moments", "[distributions]") {
  UniformDist u(-1.0, 1.0);
  REQUIRE(u.raw_moment(1).value == Catch::Approx(0.0).margin(1e-14));
  REQUIRE(u.raw_moment(2).value == Catch::Approx(1.0 / 3));
  REQUIRE(u.exp_moment(2.0).value == Catch::Approx((std::exp(2.0) - std::exp(-2.0)) / 4));

  ExponentialDist e(2.0);
  REQUIRE(e.raw_moment(1).value == Catch::Approx(0.5));
  REQUIRE(e.raw_moment(2).value == Catch::Approx(0.5));
  REQUIRE(e.quantile(0.5) == Catch::Approx(std::log(2.0) / 2));
  REQUIRE_FALSE(e.exp_moment(2.0).finite);
  REQUIRE(e.exp_moment(1.0).value == Catch::Approx(2.0));

  GaussianDist g(0.5, 2.0);
  REQUIRE(g.cdf(0.5) == Catch::Approx(0.5));
  REQUIRE(g.quantile(0.975) == Catch::Approx(0.5 + 2.0 * 1.959963984540054).margin(1e-9));
  REQUIRE(g.exp_moment(0.7).value == Catch::Approx(std::exp(0.5 * 0.7 + 0.5 * 4.0 * 0.49)));
}

TEST_CASE("affine transform delegates to the inner law", "[distributions]") {
  auto inner = std::make_shared<UniformDist>(0.0, 1.0);
  AffineDist d(-1.0, 2.0, inner);  // uniform on (-1, 1)
  REQUIRE(d.cdf(0.0) == Catch::Approx(0.5));
  REQUIRE(d.support().lo == Catch::Approx(-1.0));
  REQUIRE(d.support().hi == Catch::Approx(1.0));
  REQUIRE(d.pdf(0.3) == Catch::Approx(0.5));
  REQUIRE(d.raw_moment(1).value == Catch::Approx(0.0).margin(1e-12));
  REQUIRE(d.exp_moment(1.5).value ==
          Catch::Approx(UniformDist(-1.0, 1.0).exp_moment(1.5).value).epsilon(1e-12));

  // negated claim keeps moments consistent
  AffineDist neg(1.3035, -1.0, std::make_shared<ExponentialDist>(1.0));
  REQUIRE(neg.raw_moment(1).value == Catch::Approx(0.3035));
  REQUIRE(neg.cdf(1.3035) == Catch::Approx(1.0));
  REQUIRE(neg.cdf(0.3035) == Catch::Approx(std::exp(-1.0)));
}

TEST_CASE("binomial interest atoms", "[distributions]") {
  DistPtr d = binomial_interest_distribution();
  const auto& atoms = d->atoms();
  REQUIRE(atoms.size() == 11);
  double total = 0.0;
  for (int k = 0; k <= 10; ++k) {
    REQUIRE(atoms[k].x == Catch::Approx(0.01 * k).margin(1e-15));
    total += atoms[k].p;
  }
  REQUIRE(total == 1.0);  // dyadic probabilities add up exactly
  REQUIRE(atoms[5].p == Catch::Approx(252.0 / 1024));
  REQUIRE(d->raw_moment(1).value == Catch::Approx(0.05));
}

TEST_CASE("claim law with x^-2 exp(-x-1/x) density", "[distributions]") {
  GigClaimDist d;
  REQUIRE(d.has_density());
  REQUIRE(d.pdf(1.0) == Catch::Approx(std::exp(-2.0) / (2 * GigClaimDist::kNorm)).epsilon(1e-12));

  // moments of the normalized-by-0.139866 density, independently computed
  REQUIRE(d.raw_moment(1).value == Catch::Approx(0.814307070693).margin(1e-6));
  REQUIRE(d.raw_moment(2).value == Catch::Approx(0.999999155).margin(2e-6));
  REQUIRE(d.exp_moment(1.0).value == Catch::Approx(3.57485021378).margin(5e-5));
  REQUIRE_FALSE(d.exp_moment(1.2).finite);
  REQUIRE(d.exp_moment(0.5).finite);

  for (double x : {0.3, 0.8, 1.5, 4.0}) {
    REQUIRE(d.quantile(d.cdf(x)) == Catch::Approx(x).margin(1e-6));
  }
  for (double u : {0.01, 0.25, 0.5, 0.9, 0.999}) {
    REQUIRE(d.cdf(d.quantile(u)) == Catch::Approx(u).margin(1e-8));
  }

  double prev = 0.0;
  for (int i = 1; i <= 200; ++i) {
    double v = d.cdf(0.1 * i);
    REQUIRE(v >= prev);
    prev = v;
  }
  REQUIRE(ks_statistic(d, 100000, 11) < 0.01);
}

TEST_CASE("increment law with quartic power tails", "[distributions]") {
  HeavyTailIncrementDist d;
  REQUIRE(d.pdf(1.0) == Catch::Approx(std::numbers::sqrt2 / std::numbers::pi).epsilon(1e-14));

  // closed-form cdf checkpoints, independently computed
  REQUIRE(d.cdf(-1.0) == Catch::Approx(0.0182732905494).margin(1e-9));
  REQUIRE(d.cdf(0.0) == Catch::Approx(0.109725036915).margin(1e-9));
  REQUIRE(d.cdf(0.5) == Catch::Approx(0.277640753559).margin(1e-9));
  REQUIRE(d.cdf(1.0) == Catch::Approx(0.5).margin(1e-12));
  REQUIRE(d.cdf(2.0) == Catch::Approx(0.890274963085).margin(1e-9));
  REQUIRE(d.cdf(3.0) == Catch::Approx(0.981726709451).margin(1e-9));
  for (double t : {0.3, 1.0, 2.5, 10.0}) {
    REQUIRE(d.cdf(1.0 - t) + d.cdf(1.0 + t) == Catch::Approx(1.0).margin(1e-12));
  }

  REQUIRE(d.raw_moment(1).value == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(d.raw_moment(2).value == Catch::Approx(2.0).margin(1e-12));
  REQUIRE(d.abs_moment(2.0).value == Catch::Approx(2.0).margin(1e-9));
  REQUIRE_FALSE(d.abs_moment(3.0).finite);
  REQUIRE_FALSE(d.raw_moment(3).finite);
  REQUIRE_FALSE(d.exp_moment(0.01).finite);
  REQUIRE_FALSE(d.exp_moment(-0.01).finite);
  REQUIRE(d.exp_moment(0.0).value == 1.0);

  REQUIRE(d.quantile(0.5) == Catch::Approx(1.0).margin(1e-9));
  for (double x : {-5.0, 0.0, 0.7, 2.0, 8.0}) {
    REQUIRE(d.quantile(d.cdf(x)) == Catch::Approx(x).margin(1e-6));
  }
  REQUIRE(ks_statistic(d, 100000, 12) < 0.01);
}
