#include <cmath>
#include <numbers>

#include <catch2/catch_amalgamated.hpp>

#include "ruin/errors.hpp"
#include "ruin/numerics.hpp"

using namespace ruin;

TEST_CASE("brent_root finds simple roots", "[numerics]") {
  double r = brent_root([](double x) { return std::cos(x); }, 1.0, 2.0);
  REQUIRE(r == Catch::Approx(std::numbers::pi / 2).margin(1e-12));

  r = brent_root([](double x) { return x * x * x - 2.0; }, 0.0, 2.0);
  REQUIRE(r == Catch::Approx(std::cbrt(2.0)).margin(1e-12));
}

TEST_CASE("brent_root rejects a bracket without a sign change", "[numerics]") {
  REQUIRE_THROWS_AS(brent_root([](double x) { return x * x + 1.0; }, 0.0, 1.0),
                    ToleranceNotMet);
}

TEST_CASE("ExtReal flags divergent values", "[numerics]") {
  REQUIRE(ExtReal::of(2.5).require_finite("x") == 2.5);
  REQUIRE_THROWS_AS(ExtReal::infinite().require_finite("moment"), InfiniteMoment);
}

TEST_CASE("gauss_legendre_panels integrates polynomials exactly", "[numerics]") {
  // 8-point Gauss-Legendre is exact through degree 15
  auto rule = gauss_legendre_panels(0.0, 2.0, 3, 8);
  REQUIRE(rule.nodes.size() == 24);
  for (std::size_t i = 1; i < rule.nodes.size(); ++i) REQUIRE(rule.nodes[i] > rule.nodes[i - 1]);

  double wsum = 0.0, p15 = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    wsum += rule.weights[i];
    p15 += rule.weights[i] * std::pow(rule.nodes[i], 15);
  }
  REQUIRE(wsum == Catch::Approx(2.0).margin(1e-13));
  REQUIRE(p15 == Catch::Approx(std::pow(2.0, 16) / 16).margin(1e-9));

  REQUIRE_THROWS_AS(gauss_legendre_panels(0.0, 1.0, 2, 5), std::invalid_argument);
  REQUIRE_THROWS_AS(gauss_legendre_panels(1.0, 1.0, 2, 8), std::invalid_argument);
}

TEST_CASE("integrate handles infinite ranges", "[numerics]") {
  double v = integrate([](double x) { return std::exp(-x); }, 0.0,
                       std::numeric_limits<double>::infinity());
  REQUIRE(v == Catch::Approx(1.0).margin(1e-10));

  v = integrate(
      [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2 * std::numbers::pi); },
      -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
  REQUIRE(v == Catch::Approx(1.0).margin(1e-10));
}

TEST_CASE("MonotoneCubic preserves monotone data", "[numerics]") {
  std::vector<double> x{0.0, 0.5, 1.0, 2.0, 4.0};
  std::vector<double> y{0.0, 0.1, 0.4, 0.41, 1.0};
  MonotoneCubic f(x, y);

  for (std::size_t i = 0; i < x.size(); ++i) REQUIRE(f(x[i]) == Catch::Approx(y[i]).margin(1e-14));

  double prev = f(0.0);
  for (int i = 1; i <= 400; ++i) {
    double v = f(4.0 * i / 400.0);
    REQUIRE(v >= prev - 1e-14);
    prev = v;
  }
}

TEST_CASE("MonotoneCubic solve inverts the interpolant", "[numerics]") {
  std::vector<double> x, y;
  for (int i = 0; i <= 40; ++i) {
    double t = i / 10.0;
    x.push_back(t);
    y.push_back(std::tanh(t));
  }
  MonotoneCubic f(x, y);
  for (double t : {0.05, 0.7, 1.9, 3.3}) {
    REQUIRE(f.solve(f(t)) == Catch::Approx(t).margin(1e-9));
  }
  // out-of-range targets clamp to the ends
  REQUIRE(f.solve(-1.0) == Catch::Approx(0.0).margin(1e-12));
  REQUIRE(f.solve(2.0) == Catch::Approx(4.0).margin(1e-12));
}

TEST_CASE("MonotoneCubic validates its input", "[numerics]") {
  REQUIRE_THROWS_AS(MonotoneCubic({0.0}, {1.0}), std::invalid_argument);
  REQUIRE_THROWS_AS(MonotoneCubic({0.0, 0.0}, {0.0, 1.0}), std::invalid_argument);
}
