#include <cmath>
#include <memory>

#include <catch2/catch_amalgamated.hpp>

#include "ruin/errors.hpp"
#include "ruin/risk_model.hpp"

using namespace ruin;

TEST_CASE("increment law from degenerate premium", "[models]") {
  auto model = RiskModel::cramer_lundberg(std::make_shared<DegenerateDist>(1.3035),
                                          std::make_shared<ExponentialDist>(1.0));
  DistPtr inc = model.increment();
  REQUIRE(inc->has_density());
  // F_eta(x) = P(C >= 1.3035 - x) = exp(x - 1.3035) for x <= 1.3035
  REQUIRE(inc->cdf(0.0) == Catch::Approx(std::exp(-1.3035)).epsilon(1e-12));
  REQUIRE(inc->cdf(1.0) == Catch::Approx(std::exp(-0.3035)).epsilon(1e-12));
  REQUIRE(inc->cdf(1.3035) == Catch::Approx(1.0));
  REQUIRE(inc->raw_moment(1).value == Catch::Approx(0.3035));
}

TEST_CASE("increment law from a discrete pair", "[models]") {
  auto model = RiskModel::cramer_lundberg(
      std::make_shared<FiniteDiscreteDist>(std::vector<Atom>{{1.0, 0.5}, {2.0, 0.5}}),
      std::make_shared<FiniteDiscreteDist>(std::vector<Atom>{{0.0, 0.5}, {1.0, 0.5}}));
  DistPtr inc = model.increment();
  REQUIRE(inc->is_discrete());
  const auto& atoms = inc->atoms();
  REQUIRE(atoms.size() == 3);
  REQUIRE(atoms[0].x == 0.0);
  REQUIRE(atoms[0].p == Catch::Approx(0.25));
  REQUIRE(atoms[1].x == 1.0);
  REQUIRE(atoms[1].p == Catch::Approx(0.5));
  REQUIRE(atoms[2].x == 2.0);
  REQUIRE(atoms[2].p == Catch::Approx(0.25));
}

TEST_CASE("no state-free increment for a continuous pair", "[models]") {
  auto model = RiskModel::cramer_lundberg(std::make_shared<UniformDist>(1.0, 2.0),
                                          std::make_shared<ExponentialDist>(1.0));
  REQUIRE_THROWS_AS(model.increment(), ConfigError);
}

TEST_CASE("plain step arithmetic", "[models]") {
  auto model = RiskModel::cramer_lundberg(std::make_shared<DegenerateDist>(1.5),
                                          std::make_shared<ExponentialDist>(1.0));
  ModelState s{2.0, 0.0};
  ModelState t = step(model, s, {1.5, 0.7, 0.0});
  REQUIRE(t.surplus == Catch::Approx(2.8));
  REQUIRE(t.interest == 0.0);
}

TEST_CASE("interest step applies the current rate", "[models]") {
  auto model = RiskModel::with_interest(std::make_shared<DegenerateDist>(1.0),
                                        std::make_shared<ExponentialDist>(1.0), 0.5,
                                        binomial_interest_distribution());
  ModelState s{10.0, 0.05};
  ModelState t = step(model, s, {1.0, 2.0, 0.04});
  // surplus compounds at 5%, not at the freshly drawn rate
  REQUIRE(t.surplus == Catch::Approx((10.0 + 1.0) * 1.05 - 2.0).epsilon(1e-14));
  REQUIRE(t.interest == Catch::Approx(0.5 * 0.05 + 0.04).epsilon(1e-14));
}

TEST_CASE("steps preserve surplus ordering under shared noise", "[models]") {
  auto plain = RiskModel::cramer_lundberg(std::make_shared<UniformDist>(0.5, 1.5),
                                          std::make_shared<ExponentialDist>(1.0));
  auto interest = RiskModel::with_interest(std::make_shared<UniformDist>(0.5, 1.5),
                                           std::make_shared<ExponentialDist>(1.0), 0.0,
                                           binomial_interest_distribution());
  Rng rng(99);
  for (const RiskModel* m : {&plain, &interest}) {
    ModelState lo{0.3, 0.02}, hi{1.7, 0.02};
    for (int k = 0; k < 200; ++k) {
      ModelNoise noise = draw_noise(*m, rng);
      lo = step(*m, lo, noise);
      hi = step(*m, hi, noise);
      REQUIRE(lo.surplus <= hi.surplus);
      REQUIRE(lo.interest == hi.interest);
    }
  }
}

TEST_CASE("draw_noise is deterministic per stream", "[models]") {
  auto model = RiskModel::cramer_lundberg(std::make_shared<DegenerateDist>(1.3035),
                                          std::make_shared<ExponentialDist>(1.0));
  Rng a(5), b(5);
  for (int i = 0; i < 20; ++i) {
    ModelNoise na = draw_noise(model, a);
    ModelNoise nb = draw_noise(model, b);
    REQUIRE(na.premium == 1.3035);
    REQUIRE(na.claim == nb.claim);
    REQUIRE(na.interest == nb.interest);
  }
}

TEST_CASE("model constructors validate their inputs", "[models]") {
  REQUIRE_THROWS_AS(RiskModel::cramer_lundberg(nullptr, nullptr), ConfigError);
  REQUIRE_THROWS_AS(
      RiskModel::with_interest(std::make_shared<DegenerateDist>(1.0),
                               std::make_shared<ExponentialDist>(1.0), 1.0,
                               binomial_interest_distribution()),
      ConfigError);
  REQUIRE_THROWS_AS(
      RiskModel::with_interest(std::make_shared<DegenerateDist>(-1.0),
                               std::make_shared<ExponentialDist>(1.0), 0.0,
                               binomial_interest_distribution()),
      ConfigError);
}
