#include <algorithm>
#include <cstdint>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "ruin/rng.hpp"

using namespace ruin;

TEST_CASE("splitmix64 matches the reference sequence", "[rng]") {
  // reference test vector: first outputs from state 0
  std::uint64_t s = 0;
  REQUIRE(splitmix64(s) == UINT64_C(0xE220A8397B1DCDAF));
  REQUIRE(splitmix64(s) == UINT64_C(0x6E789E6AA1B965F4));
  REQUIRE(splitmix64(s) == UINT64_C(0x06C45D188009454F));
}

TEST_CASE("Rng streams are reproducible", "[rng]") {
  Rng a(20130401), b(20130401);
  for (int i = 0; i < 64; ++i) REQUIRE(a.next_u64() == b.next_u64());

  Rng c(20130402);
  bool same = true;
  Rng a2(20130401);
  for (int i = 0; i < 8; ++i) same = same && (a2.next_u64() == c.next_u64());
  REQUIRE_FALSE(same);
}

TEST_CASE("uniform01 stays strictly inside (0,1)", "[rng]") {
  Rng rng(7);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    double u = rng.uniform01();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  REQUIRE(sum / 100000 == Catch::Approx(0.5).margin(0.005));
}

TEST_CASE("substreams are deterministic and distinct", "[rng]") {
  Rng s0 = Rng::substream(42, 0);
  Rng s0b = Rng::substream(42, 0);
  Rng s1 = Rng::substream(42, 1);
  Rng other = Rng::substream(43, 0);

  bool all_equal_01 = true, all_equal_seed = true;
  for (int i = 0; i < 16; ++i) {
    std::uint64_t v = s0.next_u64();
    REQUIRE(v == s0b.next_u64());
    all_equal_01 = all_equal_01 && (v == s1.next_u64());
    all_equal_seed = all_equal_seed && (v == other.next_u64());
  }
  REQUIRE_FALSE(all_equal_01);
  REQUIRE_FALSE(all_equal_seed);
}

TEST_CASE("substream pairs do not collide on a small lattice", "[rng]") {
  // first outputs over (seed, index) in [0,32)^2 are pairwise distinct
  std::vector<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 32; ++s)
    for (std::uint64_t i = 0; i < 32; ++i) seen.push_back(Rng::substream(s, i).next_u64());
  std::sort(seen.begin(), seen.end());
  REQUIRE(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
}
