#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "json.hpp"
#include "pareto.hpp"
#include "ruin/errors.hpp"
#include "ruin/pipeline.hpp"

using namespace ruin;
namespace fs = std::filesystem;

namespace {

RunConfig small_fredholm_config() {
  RunConfig cfg;
  // smooth increment with adjustment coefficient exactly 1
  cfg.model =
      RiskModel::cramer_lundberg_increment(std::make_shared<GaussianDist>(0.5, 1.0));
  cfg.epsilon = 0.1;
  cfg.mc.trials = 400;
  cfg.mc.horizon = 600;
  cfg.mc.seed = 101;
  cfg.mc.z_points = {0.0, 1.0};
  return cfg;
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("config parsing fills defaults and rejects junk", "[pipeline]") {
  RunConfig cfg = parse_run_config(R"({
    "schema_version": 1,
    "model": {"variant": "plain",
              "premium": {"type": "degenerate", "value": 1.5},
              "claim": {"type": "exponential", "rate": 1.0}}
  })");
  REQUIRE(cfg.epsilon == 0.1);
  REQUIRE(cfg.split == 0.5);
  REQUIRE(cfg.tail == "auto");
  REQUIRE(cfg.solver_name() == "fredholm");
  REQUIRE_FALSE(cfg.model_ref().has_interest());

  REQUIRE_THROWS_AS(parse_run_config(R"({"schema_version": 2})"), ConfigError);
  REQUIRE_THROWS_AS(parse_run_config(R"({"schema_version": 1, "frobnicate": true})"),
                    ConfigError);
  REQUIRE_THROWS_AS(parse_run_config("{not json"), ConfigError);
  REQUIRE_THROWS_AS(parse_run_config(R"({
    "schema_version": 1,
    "model": {"variant": "plain",
              "premium": {"type": "degenerate", "value": 1.5, "typo": 0},
              "claim": {"type": "exponential", "rate": 1.0}}
  })"),
                    ConfigError);
  REQUIRE_THROWS_AS(parse_run_config(R"({
    "schema_version": 1,
    "model": {"variant": "plain",
              "increment": {"type": "uniform", "lo": 2.0, "hi": 1.0}}
  })"),
                    ConfigError);

  RunConfig empty = parse_run_config(R"({"schema_version": 1})");
  REQUIRE_THROWS_AS(empty.model_ref(), ConfigError);
}

TEST_CASE("interest model parses from json", "[pipeline]") {
  RunConfig cfg = parse_run_config(R"({
    "schema_version": 1,
    "model": {"variant": "interest",
              "premium": {"type": "degenerate", "value": 1.3035},
              "claim": {"type": "gig_claim"},
              "alpha": 0.0,
              "rate_noise": {"type": "binomial_interest"}},
    "solver": "grid"
  })");
  REQUIRE(cfg.model_ref().has_interest());
  REQUIRE(cfg.model_ref().alpha() == 0.0);
  REQUIRE(cfg.solver_name() == "grid");
}

TEST_CASE("case studies are embedded under their aliases", "[pipeline]") {
  RunConfig fig1 = case_study_config("fig1");
  REQUIRE(fig1.epsilon == 0.011);
  REQUIRE(fig1.tail == "yang");
  REQUIRE(fig1.barrier == 4.5);
  REQUIRE(fig1.solver_tol == 1e-5);
  REQUIRE(fig1.mc.trials == 2000);
  REQUIRE(fig1.mc.horizon == 2000);
  REQUIRE(fig1.mc.z_points.size() == 10);
  REQUIRE(case_study_config("gig").mc.seed == fig1.mc.seed);

  RunConfig fig2 = case_study_config("fig2");
  REQUIRE(fig2.model_ref().has_interest());
  REQUIRE(fig2.solver_name() == "grid");
  REQUIRE(fig2.mc.i_points.size() == 3);
  REQUIRE(case_study_config("interest").mc.seed == fig2.mc.seed);

  RunConfig fig3 = case_study_config("fig3");
  REQUIRE(fig3.epsilon == 0.1);
  REQUIRE(fig3.split == 1.0);
  REQUIRE(fig3.tail == "moment");
  REQUIRE(fig3.s1 == 1.07);
  REQUIRE_FALSE(fig3.barrier.has_value());
  REQUIRE(case_study_config("heavy").mc.seed == fig3.mc.seed);

  REQUIRE_THROWS_AS(case_study_config("fig4"), ConfigError);
}

TEST_CASE("barrier selection picks the sharpest available bound", "[pipeline]") {
  RunConfig cfg;
  cfg.model = RiskModel::cramer_lundberg_increment(
      std::make_shared<FiniteDiscreteDist>(std::vector<Atom>{{-1.0, 0.25}, {1.0, 0.75}}));
  cfg.epsilon = 0.02;
  BarrierChoice b = select_barrier(cfg);
  REQUIRE(b.kind == "lundberg");
  REQUIRE(b.lambda);
  REQUIRE(*b.lambda == Catch::Approx(std::log(3.0)).margin(1e-9));
  REQUIRE(b.y == Catch::Approx(std::log(100.0) / std::log(3.0)).margin(1e-9));
  REQUIRE(b.tail_value == Catch::Approx(0.01).margin(1e-9));
}

TEST_CASE("barrier selection falls back to the moment bound", "[pipeline]") {
  RunConfig cfg;
  cfg.model =
      RiskModel::cramer_lundberg_increment(std::make_shared<HeavyTailIncrementDist>());
  cfg.epsilon = 0.1;
  cfg.split = 1.0;
  cfg.s1 = 1.07;
  BarrierChoice b = select_barrier(cfg);  // tail "auto": no exponential moments
  REQUIRE(b.kind == "moment");
  REQUIRE(b.constants);
  REQUIRE(b.constants->c == Catch::Approx(5.0).margin(1e-9));
  REQUIRE(b.y == Catch::Approx(50.0).margin(1e-9));
  REQUIRE_FALSE(b.truncation.has_value());
}

TEST_CASE("barrier selection truncates a heavy premium", "[pipeline]") {
  RunConfig cfg;
  cfg.model = RiskModel::cramer_lundberg(std::make_shared<ruin::testing::ParetoDist>(),
                                         std::make_shared<DegenerateDist>(0.5));
  cfg.tail = "moment";
  cfg.epsilon = 0.1;
  cfg.split = 1.0;
  BarrierChoice b = select_barrier(cfg);
  REQUIRE(b.kind == "moment");
  REQUIRE(b.truncation);
  REQUIRE(*b.truncation == 4.0);
  REQUIRE(b.constants->c == Catch::Approx(7.0).margin(1e-5));
  REQUIRE(b.y == Catch::Approx(70.0).margin(1e-3));
}

TEST_CASE("net profit condition violations abort the pipeline", "[pipeline]") {
  RunConfig cfg;
  cfg.model = RiskModel::cramer_lundberg_increment(
      std::make_shared<FiniteDiscreteDist>(std::vector<Atom>{{-1.0, 0.75}, {1.0, 0.25}}));
  REQUIRE_THROWS_MATCHES(select_barrier(cfg), NoDrift,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("psi == 1")));
}

TEST_CASE("solver dispatch matches the model kind", "[pipeline]") {
  RunConfig plain = small_fredholm_config();
  plain.solver = "grid";
  REQUIRE_THROWS_AS(run_solve(plain), ConfigError);

  RunConfig interest;
  interest.model = RiskModel::with_interest(std::make_shared<DegenerateDist>(1.5),
                                            std::make_shared<ExponentialDist>(1.0), 0.0,
                                            binomial_interest_distribution());
  interest.solver = "fredholm";
  REQUIRE_THROWS_AS(run_solve(interest), ConfigError);
}

TEST_CASE("small solve produces a certified answer", "[pipeline]") {
  RunConfig cfg = small_fredholm_config();
  SolveOutput out = run_solve(cfg);
  REQUIRE(out.solver == "fredholm");
  REQUIRE(out.barrier.kind == "lundberg");
  REQUIRE(out.solver_error() <= cfg.solver_tol);
  REQUIRE(out.discretization_error() == 0.0);
  REQUIRE(out.epsilon_total() <= cfg.epsilon);
  REQUIRE(out.psi_tilde(0.0) > 0.0);
  REQUIRE(out.psi_tilde(0.0) < 1.0);
  REQUIRE(out.psi_tilde(0.0) >= out.psi_tilde(1.0) - 1e-9);

  nlohmann::json cert = out.certificate(cfg);
  REQUIRE(cert["schema_version"] == 1);
  REQUIRE(cert["within_requested"] == true);
  REQUIRE(cert["epsilon_total"].get<double>() ==
          Catch::Approx(cert["tail"]["value"].get<double>() +
                        cert["solver_error"].get<double>() +
                        cert["discretization_error"].get<double>()));
  REQUIRE(cert["tail"]["kind"] == "lundberg");
  REQUIRE(cert["solver"]["nodes"].get<int>() >= 128);
}

TEST_CASE("validation passes for an honest configuration", "[pipeline]") {
  RunConfig cfg = small_fredholm_config();
  SolveOutput out = run_solve(cfg);
  auto rows = run_validation(cfg, out);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    REQUIRE(r.ok);
    REQUIRE(r.band <= cfg.epsilon + r.est.half_width() + 1e-12);
    REQUIRE(std::abs(r.est.p_hat - r.predicted) <= r.band);
  }

  std::ostringstream csv;
  write_validation_csv(csv, rows);
  REQUIRE(csv.str().rfind("z,i,p_hat,lo,hi,N,trials,seed\n", 0) == 0);
}

TEST_CASE("overclaimed precision fails validation", "[pipeline]") {
  RunConfig cfg = small_fredholm_config();
  cfg.barrier = 0.6;   // far below any useful barrier
  cfg.epsilon = 0.02;  // claimed precision the tiny barrier cannot deliver
  cfg.mc.trials = 1200;
  cfg.mc.z_points = {0.0};
  cfg.out_dir = fresh_dir("ruin_adversarial_out").string();

  SolveOutput out = run_solve(cfg);
  auto rows = run_validation(cfg, out);
  REQUIRE_FALSE(rows[0].ok);

  std::ostringstream log;
  REQUIRE_THROWS_AS(cmd_validate(cfg, log), ValidationFailed);
  REQUIRE(fs::exists(fs::path(cfg.out_dir) / "validation.json"));
  fs::remove_all(cfg.out_dir);
}

TEST_CASE("validation is robust across seeds at reduced scale", "[pipeline]") {
  RunConfig cfg = small_fredholm_config();
  int passed = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    cfg.mc.seed = seed;
    SolveOutput out = run_solve(cfg);
    auto rows = run_validation(cfg, out);
    bool all = true;
    for (const auto& r : rows) all = all && r.ok;
    passed += all ? 1 : 0;
  }
  REQUIRE(passed >= 4);
}

TEST_CASE("solve command writes the solution bundle", "[pipeline]") {
  RunConfig cfg = small_fredholm_config();
  cfg.out_dir = fresh_dir("ruin_solve_out").string();
  std::ostringstream log;
  cmd_solve(cfg, log);
  REQUIRE(log.str().find("epsilon_total") != std::string::npos);

  fs::path dir = cfg.out_dir;
  REQUIRE(fs::exists(dir / "solution.csv"));
  REQUIRE(fs::exists(dir / "certificate.json"));

  auto cert = nlohmann::json::parse(slurp(dir / "certificate.json"));
  REQUIRE(cert["within_requested"] == true);

  std::string first = slurp(dir / "solution.csv");
  cmd_solve(cfg, log);  // rerun into the same directory
  REQUIRE(slurp(dir / "solution.csv") == first);
  fs::remove_all(dir);
}

TEST_CASE("bound command prints the certificate header", "[pipeline]") {
  RunConfig cfg = small_fredholm_config();
  std::ostringstream out;
  cmd_bound(cfg, out);
  auto j = nlohmann::json::parse(out.str());
  REQUIRE(j["kind"] == "lundberg");
  REQUIRE(j["y"].get<double>() > 0.0);
}

TEST_CASE("config files round-trip through the loader", "[pipeline]") {
  fs::path dir = fresh_dir("ruin_cfg_out");
  fs::create_directories(dir);
  fs::path file = dir / "run.json";
  {
    std::ofstream f(file);
    f << R"({
      "schema_version": 1,
      "epsilon": 0.05,
      "model": {"variant": "plain",
                "increment": {"type": "gaussian", "mean": 0.5, "stddev": 1.0}}
    })";
  }
  RunConfig cfg = load_run_config(file.string());
  REQUIRE(cfg.epsilon == 0.05);
  REQUIRE(cfg.model_ref().increment()->has_density());
  REQUIRE_THROWS_AS(load_run_config((dir / "missing.json").string()), ConfigError);
  fs::remove_all(dir);
}
