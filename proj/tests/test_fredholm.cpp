#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "ruin/errors.hpp"
#include "ruin/fredholm.hpp"
#include "ruin/risk_model.hpp"

using namespace ruin;

namespace {

DistPtr gaussian_increment() {
  // smooth kernel, so the composite rule converges fast
  return RiskModel::cramer_lundberg_increment(std::make_shared<GaussianDist>(0.5, 1.0))
      .increment();
}

DistPtr kinked_increment() {
  // eta = 1.5 - C with C ~ Exp(1): the density jumps at 1.5
  return RiskModel::cramer_lundberg(std::make_shared<DegenerateDist>(1.5),
                                    std::make_shared<ExponentialDist>(1.0))
      .increment();
}

// constant "density" makes K a rank-one matrix with eigenvalue y
class FlatFake : public Dist {
 public:
  double cdf(double x) const override { return std::clamp(0.5 * (x + 1.0), 0.0, 1.0); }
  Support support() const override { return {-1.0, 1.0}; }
  bool has_density() const override { return true; }
  double pdf(double) const override { return 1.0; }
};

}  // namespace

TEST_CASE("composite quadrature rule on [0, y]", "[fredholm]") {
  QuadratureRule rule = QuadratureRule::composite_gl(4.5, 128);
  REQUIRE(rule.nodes.size() == 128);
  REQUIRE(rule.weights.size() == 128);
  double wsum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    REQUIRE(rule.nodes[i] > 0.0);
    REQUIRE(rule.nodes[i] < 4.5);
    if (i) REQUIRE(rule.nodes[i] > rule.nodes[i - 1]);
    wsum += rule.weights[i];
  }
  REQUIRE(wsum == Catch::Approx(4.5).margin(1e-12));
  REQUIRE_THROWS_AS(QuadratureRule::composite_gl(4.5, 12), std::invalid_argument);
  REQUIRE_THROWS_AS(QuadratureRule::composite_gl(-1.0, 128), std::invalid_argument);
}

TEST_CASE("solve reproduces its node values and stays in [0,1]", "[fredholm]") {
  DistPtr inc = gaussian_increment();
  auto [phi, report] = solve_two_barrier(inc, 3.0, 128);

  REQUIRE(report.nodes == 128);
  REQUIRE(report.residual < 1e-6);
  REQUIRE(report.rcond > 0.0);

  // natural interpolation agrees with the linear system at the nodes
  for (std::size_t k = 0; k < phi.rule().nodes.size(); k += 7) {
    REQUIRE(phi.evaluate(phi.rule().nodes[k]) ==
            Catch::Approx(phi.node_values()[k]).margin(1e-12));
  }

  REQUIRE(phi.evaluate(-0.5) == 0.0);
  REQUIRE(phi.evaluate(3.7) == 1.0);
  // sitting exactly on the barrier is not an exit: the next step can drop
  REQUIRE(phi.evaluate(3.0) < 1.0);
  REQUIRE(phi.evaluate(3.0) > 0.9);

  double prev = phi.evaluate(0.0);
  REQUIRE(prev >= 0.0);
  for (int i = 1; i <= 300; ++i) {
    double v = phi.evaluate(3.0 * i / 300.0);
    REQUIRE(v >= prev - 1e-9);  // exit probability grows with surplus
    REQUIRE(v <= 1.0);
    prev = v;
  }
}

TEST_CASE("a lower barrier is easier to exit", "[fredholm]") {
  DistPtr inc = gaussian_increment();
  auto [phi3, r3] = solve_two_barrier(inc, 3.0, 256);
  auto [phi45, r45] = solve_two_barrier(inc, 4.5, 256);
  for (double z : {0.0, 0.5, 1.5, 2.5, 2.9}) {
    REQUIRE(phi3.evaluate(z) >= phi45.evaluate(z) - 1e-6);
  }
}

TEST_CASE("refinement drives the residual below tolerance", "[fredholm]") {
  DistPtr inc = gaussian_increment();
  auto [phi, report] = refine_until(inc, 3.0, 1e-8, 32, 1024);
  REQUIRE(report.residual <= 1e-8);
  REQUIRE(report.nodes >= 32);
  REQUIRE(report.clamp_excursion <= 1e-8);
}

TEST_CASE("a density jump inside the kernel is reported honestly", "[fredholm]") {
  // misaligned with every panel, the jump stalls convergence; the
  // a-posteriori residual has to say so rather than certify garbage
  DistPtr inc = kinked_increment();
  auto [phi, report] = solve_two_barrier(inc, 3.0, 128);
  REQUIRE(report.residual > 1e-4);
  for (double z : {0.0, 1.0, 2.0, 2.9}) {
    REQUIRE(phi.evaluate(z) >= 0.0);
    REQUIRE(phi.evaluate(z) <= 1.0);
  }
  REQUIRE_THROWS_AS(refine_until(inc, 3.0, 1e-10, 32, 512), ResidualTooLarge);
}

TEST_CASE("discrete increments are rejected", "[fredholm]") {
  DistPtr inc = std::make_shared<FiniteDiscreteDist>(
      std::vector<Atom>{{-1.0, 0.25}, {1.0, 0.75}});
  REQUIRE_THROWS_AS(solve_two_barrier(inc, 3.0, 64), NoDensity);
}

TEST_CASE("singular kernel is detected", "[fredholm]") {
  // row sums hit exactly 1, so I - K annihilates the constant vector
  DistPtr fake = std::make_shared<FlatFake>();
  REQUIRE_THROWS_AS(solve_two_barrier(fake, 1.0, 64), SingularSystem);
}

TEST_CASE("kernel operator norm of the claim-driven increment", "[fredholm]") {
  auto model = RiskModel::cramer_lundberg(std::make_shared<DegenerateDist>(1.3035),
                                          std::make_shared<GigClaimDist>());
  double norm = operator_norm(*model.increment(), 4.5);
  REQUIRE(norm < 0.999);
  REQUIRE(norm == Catch::Approx(0.9989).margin(1e-3));
}

TEST_CASE("csv export covers the closed grid", "[fredholm]") {
  DistPtr inc = gaussian_increment();
  auto [phi, report] = solve_two_barrier(inc, 3.0, 64);
  std::ostringstream out;
  phi.write_csv(out, 0.5);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  REQUIRE(line == "z,phi,one_minus_phi");
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  REQUIRE(rows == 7);  // z = 0, 0.5, ..., 3.0
}
