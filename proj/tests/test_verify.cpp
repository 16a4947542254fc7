#include <gtest/gtest.h>

#include "comply/verify.hpp"

using namespace comply;

TEST(NaiveOracles, GreedyAndInjection) {
  EXPECT_EQ(verify::brute_force_greedy(ap(3), 13, {}, 0), (std::vector<Int>{0, 1, 3, 4, 9, 10, 12, 13}));
  EXPECT_EQ(verify::brute_force_injection(ap(3), AvoidanceMode::MaxAc, 12),
            (std::vector<Int>{0, 1, 3, 2, 4, 5, 7, 6, 9, 8, 12, 11, 10}));
  EXPECT_TRUE(verify::naive_excludes(ap(3), {0, 1}, 2));
  EXPECT_FALSE(verify::naive_excludes(ap(3), {0, 1}, 3));
}

TEST(NaiveOracles, ExhaustiveSolvers) {
  auto t = verify::exhaustive_comply_solver(verify::pair_targets([](Int) { return true; }), 13);
  EXPECT_EQ(t.p_positions(), (std::vector<Int>{0, 1, 3, 4, 9, 10, 12, 13}));
  auto s = verify::exhaustive_comply_solver(verify::explicit_targets({{1}}), 4, false);
  EXPECT_EQ(s.n_positions(), (std::vector<Int>{0, 2, 4}));
  auto g = verify::exhaustive_2d_solver(empty_condition(), AvoidanceMode::MaxAc, 4, 4);
  for (Int x = 0; x <= 4; ++x)
    for (Int y = 0; y <= 4; ++y) EXPECT_EQ(g.at(x, y) == Outcome::P, x == y);
}

TEST(NaiveOracles, RandomFamilyShape) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    auto fam = verify::random_family(rng, 8, 20);
    EXPECT_FALSE(fam.empty());
    EXPECT_LE(fam.size(), 8u);
    for (auto& s : fam)
      for (Int v : s) {
        EXPECT_GE(v, 1);
        EXPECT_LE(v, 20);
      }
  }
}

TEST(Harness, NoDivergences) {
  auto r = verify::run_oracle_harness(1);
  for (auto& d : r.divergences) ADD_FAILURE() << d.check << ": " << d.detail;
  EXPECT_GE(r.checks.size(), 40u);
  EXPECT_TRUE(r.ok());
}
