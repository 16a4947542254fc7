#include <gtest/gtest.h>

#include <set>

#include "comply/greedy_injections.hpp"
#include "comply/greedy_sets.hpp"
#include "comply/multiheap.hpp"

using namespace comply;

namespace {

constexpr AvoidanceMode kUn = AvoidanceMode::Unrestricted;
constexpr AvoidanceMode kMax = AvoidanceMode::MaxAc;
constexpr AvoidanceMode kOp = AvoidanceMode::OrderPreserving;

bool member_geometry(AvoidanceMode mode, Point pos, const std::vector<Point>& m) {
  for (auto& a : m) {
    if (a.x >= pos.x) return false;
    if (mode != kUn && a.y >= pos.y) return false;
    for (auto& b : m)
      if (mode == kOp && a.x < b.x && a.y >= b.y) return false;
  }
  return true;
}

// Some assignment of pos and the members to the condition's slots holds.
bool complies(const ConditionExpr& c, Point pos, const std::vector<Point>& m) {
  std::vector<Point> pts(m);
  pts.push_back(pos);
  std::vector<std::size_t> order(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<Int> xs(pts.size()), ys(pts.size());
  do {
    for (std::size_t i = 0; i < order.size(); ++i) xs[i] = pts[order[i]].x, ys[i] = pts[order[i]].y;
    if (c.holds(xs, ys)) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

// Bottom-up by column then row, checking every multiset of members.
std::set<Point> oracle_grid_p(const ConditionExpr& c, AvoidanceMode mode, Int X, Int Y) {
  std::set<Point> P;
  const std::size_t r = c.arity() - 1;
  for (Int x = 0; x <= X; ++x) {
    for (Int y = 0; y <= Y; ++y) {
      Point pos{x, y};
      bool n = false;
      for (auto& p : P) n = n || (p.x == x && p.y < y) || (p.y == y && p.x < x);
      std::vector<Point> pool;
      for (auto& p : P)
        if (p.x < x) pool.push_back(p);
      std::vector<std::size_t> idx(r, 0);
      while (!n && !pool.empty()) {
        std::vector<Point> m;
        for (auto i : idx) m.push_back(pool[i]);
        if (member_geometry(mode, pos, m) && complies(c, pos, m)) n = true;
        std::size_t i = 0;
        for (; i < r; ++i) {
          if (++idx[i] < pool.size()) break;
          idx[i] = 0;
        }
        if (i == r) break;
      }
      if (!n) P.insert(pos);
    }
  }
  return P;
}

std::set<Point> as_set(const std::vector<Point>& v) { return {v.begin(), v.end()}; }

std::set<Point> graph_and_transpose(const GreedyInjection& g, Int X, Int Y) {
  std::set<Point> s;
  for (Int n = 0; n <= g.N(); ++n) {
    Int p = g.pi(n);
    if (n <= X && p <= Y) s.insert({n, p});
    if (p <= X && n <= Y) s.insert({p, n});
  }
  return s;
}

bool has_proposal(const std::vector<Proposal>& ps, Proposal want) {
  std::sort(want.begin(), want.end());
  return std::find(ps.begin(), ps.end(), want) != ps.end();
}

}  // namespace

TEST(Proposals, TerminalHasNone) {
  for (auto mode : {kUn, kMax, kOp}) EXPECT_TRUE(proposals_2d(ap(3), mode, {0, 0}).empty());
}

TEST(Proposals, NimMovesAlwaysPresent) {
  auto ps = proposals_2d(empty_condition(), kMax, {2, 1});
  EXPECT_EQ(ps.size(), 3u);
  EXPECT_TRUE(has_proposal(ps, {{0, 1}}));
  EXPECT_TRUE(has_proposal(ps, {{1, 1}}));
  EXPECT_TRUE(has_proposal(ps, {{2, 0}}));
}

TEST(Proposals, ThreeTermPair) {
  auto ps = proposals_2d(ap(3), kMax, {2, 3});
  EXPECT_TRUE(has_proposal(ps, {{0, 1}, {1, 2}}));
  EXPECT_FALSE(has_proposal(ps, {{0, 0}, {1, 2}}));
}

TEST(Proposals, LineExample) {
  auto ps = proposals_2d(line(), kMax, {6, 8});
  EXPECT_TRUE(has_proposal(ps, {{3, 2}, {5, 6}}));
  EXPECT_EQ(check_proposal_2d(line(), kMax, {6, 8}, {{3, 2}, {5, 6}}, 20, 20), ProposalVerdict::ok);
  EXPECT_EQ(check_proposal_2d(line(), kMax, {6, 8}, {{4, 3}, {5, 6}}, 20, 20), ProposalVerdict::condition_fails);
  EXPECT_STREQ(verdict_reason(ProposalVerdict::condition_fails), "condition fails");
  EXPECT_EQ(check_proposal_2d(line(), kMax, {6, 8}, {{3, 2}, {7, 10}}, 20, 20), ProposalVerdict::mode_violation);
  EXPECT_EQ(check_proposal_2d(line(), kMax, {6, 8}, {{3, 2}, {5, 6}}, 4, 20), ProposalVerdict::off_board);
  EXPECT_EQ(check_proposal_2d(line(), kMax, {6, 8}, {{2, 8}}, 20, 20), ProposalVerdict::ok);
}

TEST(Proposals, EveryListedProposalChecksOut) {
  for (auto mode : {kUn, kMax, kOp})
    for (auto c : {ap(3), line(), sidon(2)}) {
      Point pos{5, 4};
      for (auto& p : proposals_2d(c, mode, pos, 6))
        EXPECT_EQ(check_proposal_2d(c, mode, pos, p, 6, 6), ProposalVerdict::ok) << c.to_string();
    }
}

TEST(Proposals, StrictProgress) {
  for (auto mode : {kMax, kOp})
    for (auto c : {ap(3), line(), sidon(2), diagonal()})
      for (Point pos : {Point{4, 5}, Point{6, 3}, Point{5, 5}})
        for (auto& p : proposals_2d(c, mode, pos))
          for (auto& q : p) EXPECT_LT(q.x + q.y, pos.x + pos.y);
}

TEST(Grid, NimDiagonal) {
  auto t = comply_outcomes_2d(empty_condition(), kMax, 5, 5);
  std::set<Point> diag;
  for (Int n = 0; n <= 5; ++n) diag.insert({n, n});
  EXPECT_EQ(as_set(t.p_positions()), diag);
}

TEST(Grid, ThreeTermGraph) {
  auto t = comply_outcomes_2d(ap(3), kMax, 13, 13);
  EXPECT_EQ(as_set(t.p_positions()), graph_and_transpose(greedy_injection(ap(3), kMax, 13), 13, 13));
}

TEST(Grid, LineContainsPrefix) {
  auto t = comply_outcomes_2d(line(), kMax, 11, 13);
  for (Point p : {Point{6, 8}, Point{7, 11}, Point{9, 13}}) EXPECT_EQ(t.at(p), Outcome::P);
}

TEST(Grid, PSetIsGraphOfInjection) {
  EXPECT_EQ(as_set(comply_outcomes_2d(empty_condition(), kMax, 60, 60).p_positions()),
            graph_and_transpose(greedy_injection(empty_condition(), kMax, 60), 60, 60));
  EXPECT_EQ(as_set(comply_outcomes_2d(ap(3), kMax, 60, 60).p_positions()),
            graph_and_transpose(greedy_injection(ap(3), kMax, 200), 60, 60));
  EXPECT_EQ(as_set(comply_outcomes_2d(line(), kMax, 40, 40).p_positions()),
            graph_and_transpose(greedy_injection(line(), kMax, 200), 40, 40));
  EXPECT_EQ(as_set(comply_outcomes_2d(sidon(2), kOp, 20, 20).p_positions()),
            graph_and_transpose(greedy_injection(sidon(2), kOp, 100), 20, 20));
}

TEST(Grid, MatchesOracle) {
  for (auto mode : {kUn, kMax, kOp}) {
    EXPECT_EQ(as_set(comply_outcomes_2d(ap(3), mode, 12, 12).p_positions()), oracle_grid_p(ap(3), mode, 12, 12))
        << mode_name(mode);
    EXPECT_EQ(as_set(comply_outcomes_2d(line(), mode, 10, 10).p_positions()), oracle_grid_p(line(), mode, 10, 10))
        << mode_name(mode);
    EXPECT_EQ(as_set(comply_outcomes_2d(diagonal(), mode, 12, 12).p_positions()),
              oracle_grid_p(diagonal(), mode, 12, 12))
        << mode_name(mode);
    EXPECT_EQ(as_set(comply_outcomes_2d(sidon(2), mode, 7, 7).p_positions()), oracle_grid_p(sidon(2), mode, 7, 7))
        << mode_name(mode);
  }
}

TEST(Grid, SymmetricModes) {
  for (auto mode : {kMax, kOp})
    for (auto c : {ap(3), line(), sidon(2)}) {
      auto t = comply_outcomes_2d(c, mode, 25, 25);
      for (Int x = 0; x <= 25; ++x)
        for (Int y = 0; y <= 25; ++y) EXPECT_EQ(t.at(x, y), t.at(y, x));
    }
}

TEST(Grid, UnrestrictedIsFlaggedApproximate) {
  EXPECT_TRUE(comply_outcomes_2d(ap(3), kUn, 8, 8).approximate);
  EXPECT_FALSE(comply_outcomes_2d(ap(3), kMax, 8, 8).approximate);
  EXPECT_THROW(comply_outcomes_2d(ap(3), kMax, 8, 8).at(9, 0), OutOfTable);
}

TEST(Strategy, BestProposalAndChoice) {
  auto t = comply_outcomes_2d(line(), kMax, 20, 20);
  EXPECT_FALSE(best_proposal_2d(t, {6, 8}).has_value());
  auto p = best_proposal_2d(t, {5, 6});
  EXPECT_EQ(p.has_value(), t.at(5, 6) == Outcome::N);
  auto nim = comply_outcomes_2d(empty_condition(), kMax, 5, 5);
  EXPECT_FALSE(best_proposal_2d(nim, {3, 3}).has_value());
  for (Int x = 0; x <= 20; ++x)
    for (Int y = 0; y <= 20; ++y) {
      auto q = best_proposal_2d(t, {x, y});
      ASSERT_EQ(q.has_value(), t.at(x, y) == Outcome::N);
      if (q) {
        EXPECT_EQ(check_proposal_2d(line(), kMax, {x, y}, *q, 20, 20), ProposalVerdict::ok);
        for (auto& m : *q) EXPECT_EQ(t.at(m), Outcome::P);
      }
    }
  EXPECT_EQ(best_choice_2d(t, {{6, 8}, {5, 6}}), (Point{5, 6}));
}

TEST(ThreeHeap, Examples) {
  EXPECT_EQ(three_heap_classify({0, 1, 2}), Outcome::P);
  EXPECT_EQ(three_heap_classify({0, 2, 4}), Outcome::N);
  EXPECT_EQ(three_heap_classify({1, 3, 5}), Outcome::P);
  EXPECT_EQ(three_heap_classify({2, 5, 8}), Outcome::N);
  EXPECT_EQ(three_heap_solve({0, 1, 2}), Outcome::P);
  EXPECT_EQ(three_heap_solve({0, 2, 4}), Outcome::N);
  EXPECT_EQ(three_heap_solve({3, 4, 5}), Outcome::P);
  EXPECT_THROW(TripleAP(1, 2, 4), InvalidParams);
  EXPECT_THROW(TripleAP(2, 2, 2), InvalidParams);
}

TEST(ThreeHeap, ClassifierMatchesSolver) {
  for (Int z = 2; z <= 100; ++z)
    for (Int y = (z + 1) / 2 + (z % 2 == 0 ? 1 : 0); y < z; ++y) {
      Int x = 2 * y - z;
      if (x < 0 || x >= y) continue;
      TripleAP t(x, y, z);
      EXPECT_EQ(three_heap_classify(t), three_heap_solve(t)) << x << "," << y << "," << z;
    }
}
