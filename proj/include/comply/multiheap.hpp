#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "conditions.hpp"
#include "greedy_sets.hpp"
#include "heap_games.hpp"
#include "instances.hpp"

namespace comply {

struct Point {
  Int x = 0, y = 0;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

using Proposal = std::vector<Point>;

struct GridOutcomeTable {
  ConditionExpr condition;
  AvoidanceMode mode;
  Int X = 0, Y = 0;
  std::vector<Outcome> cells;  // x * (Y + 1) + y
  // Unrestricted grids ignore tuple members above Y, so rows near the top are approximate.
  bool approximate = false;

  bool contains(Point p) const { return p.x >= 0 && p.y >= 0 && p.x <= X && p.y <= Y; }
  Outcome at(Point p) const {
    if (!contains(p))
      throw OutOfTable("position (" + std::to_string(p.x) + "," + std::to_string(p.y) + ") outside table");
    return cells[static_cast<std::size_t>(p.x * (Y + 1) + p.y)];
  }
  Outcome at(Int x, Int y) const { return at(Point{x, y}); }
  std::vector<Point> p_positions() const {
    std::vector<Point> out;
    for (Int x = 0; x <= X; ++x)
      for (Int y = 0; y <= Y; ++y)
        if (at(x, y) == Outcome::P) out.push_back({x, y});
    return out;
  }
};

namespace detail {

// Whether members, with pos in some slot and members arranged in the others,
// satisfy the condition jointly. members.size() == arity - 1; members may repeat.
inline bool tuple_complies(const ConditionExpr& cond, Point pos, std::vector<Point> members) {
  const std::size_t k = cond.arity();
  std::sort(members.begin(), members.end());
  std::array<Int, FormFamily::kMaxArity> xs{}, ys{};
  do {
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t m = 0;
      for (std::size_t s = 0; s < k; ++s) {
        Point p = s == j ? pos : members[m++];
        xs[s] = p.x;
        ys[s] = p.y;
      }
      if (cond.holds(std::span<const Int>(xs.data(), k), std::span<const Int>(ys.data(), k))) return true;
    }
  } while (std::next_permutation(members.begin(), members.end()));
  return false;
}

inline bool mode_geometry_ok(AvoidanceMode mode, Point pos, const std::vector<Point>& members) {
  for (auto& m : members) {
    if (m.x >= pos.x) return false;
    if (mode != AvoidanceMode::Unrestricted && m.y >= pos.y) return false;
  }
  if (mode == AvoidanceMode::OrderPreserving)
    for (auto& a : members)
      for (auto& b : members)
        if (a.x < b.x && !(a.y < b.y)) return false;
  return true;
}

// Visit multisets of size r drawn from pool (indices nondecreasing).
template <class Fn>
bool for_each_multiset(const std::vector<Point>& pool, std::size_t r, Fn&& fn) {
  if (r == 0) return fn(std::vector<Point>{});
  if (pool.empty()) return false;
  std::vector<std::size_t> idx(r, 0);
  std::vector<Point> pick(r);
  while (true) {
    for (std::size_t i = 0; i < r; ++i) pick[i] = pool[idx[i]];
    if (fn(pick)) return true;
    std::size_t i = r;
    while (i > 0 && idx[i - 1] + 1 == pool.size()) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[i - 1];
  }
}

}  // namespace detail

enum class ProposalVerdict { ok, off_board, mode_violation, condition_fails };

inline const char* verdict_reason(ProposalVerdict v) {
  switch (v) {
    case ProposalVerdict::ok: return "ok";
    case ProposalVerdict::off_board: return "off-board";
    case ProposalVerdict::mode_violation: return "mode violation";
    case ProposalVerdict::condition_fails: return "condition fails";
  }
  return "?";
}

// Legality of a proposal made at pos on the board [0,X] x [0,Y].
inline ProposalVerdict check_proposal_2d(const ConditionExpr& cond, AvoidanceMode mode, Point pos,
                                         std::vector<Point> proposal, Int X, Int Y) {
  std::sort(proposal.begin(), proposal.end());
  proposal.erase(std::unique(proposal.begin(), proposal.end()), proposal.end());
  if (proposal.empty()) return ProposalVerdict::condition_fails;
  for (auto& p : proposal)
    if (p.x < 0 || p.y < 0 || p.x > X || p.y > Y) return ProposalVerdict::off_board;
  if (proposal.size() == 1) {
    auto p = proposal[0];
    if ((p.x == pos.x && p.y < pos.y) || (p.y == pos.y && p.x < pos.x)) return ProposalVerdict::ok;
  }
  if (!detail::mode_geometry_ok(mode, pos, proposal)) return ProposalVerdict::mode_violation;
  const std::size_t r = cond.arity() - 1;
  if (proposal.size() > r) return ProposalVerdict::condition_fails;
  // Pad with repeats of the members to reach arity - 1 entries.
  bool found = detail::for_each_multiset(proposal, r - proposal.size(), [&](const std::vector<Point>& extra) {
    std::vector<Point> m = proposal;
    m.insert(m.end(), extra.begin(), extra.end());
    return detail::tuple_complies(cond, pos, m);
  });
  return found ? ProposalVerdict::ok : ProposalVerdict::condition_fails;
}

// Visits every proposal at pos: Nim singletons, then condition sets whose
// members lie on the board (x below pos.x, y up to Y). fn returns true to stop.
template <class Fn>
void for_each_proposal_2d(const ConditionExpr& cond, AvoidanceMode mode, Point pos, Int Y, Fn&& fn) {
  for (Int x = 0; x < pos.x; ++x)
    if (fn(Proposal{{x, pos.y}})) return;
  for (Int y = 0; y < pos.y; ++y)
    if (fn(Proposal{{pos.x, y}})) return;
  std::vector<Point> region;
  const Int ymax = mode == AvoidanceMode::Unrestricted ? Y : pos.y - 1;
  for (Int x = 0; x < pos.x; ++x)
    for (Int y = 0; y <= ymax; ++y) region.push_back({x, y});
  std::set<Proposal> seen;
  detail::for_each_multiset(region, cond.arity() - 1, [&](const std::vector<Point>& m) {
    if (!detail::mode_geometry_ok(mode, pos, m)) return false;
    Proposal p = m;
    p.erase(std::unique(p.begin(), p.end()), p.end());
    if (seen.count(p)) return false;
    if (!detail::tuple_complies(cond, pos, m)) return false;
    seen.insert(p);
    return static_cast<bool>(fn(p));
  });
}

inline std::vector<Proposal> proposals_2d(const ConditionExpr& cond, AvoidanceMode mode, Point pos, Int Y) {
  std::vector<Proposal> out;
  for_each_proposal_2d(cond, mode, pos, Y, [&](const Proposal& p) {
    out.push_back(p);
    return false;
  });
  return out;
}

inline std::vector<Proposal> proposals_2d(const ConditionExpr& cond, AvoidanceMode mode, Point pos) {
  return proposals_2d(cond, mode, pos, pos.y);
}

namespace detail {

// Ordered tuples of arity-1 P-points (with pos in one slot) satisfying the
// condition under the mode. Returns the member set of the first one found.
inline std::optional<Proposal> find_all_p_tuple(const ConditionExpr& cond, AvoidanceMode mode, Point pos,
                                                const std::vector<Point>& pool) {
  const std::size_t k = cond.arity();
  const std::size_t r = k - 1;
  if (pool.empty()) return std::nullopt;
  std::array<std::size_t, FormFamily::kMaxArity> idx{};
  std::array<Int, FormFamily::kMaxArity> xs{}, ys{};
  std::vector<Point> members(r);
  while (true) {
    for (std::size_t i = 0; i < r; ++i) members[i] = pool[idx[i]];
    if (mode != AvoidanceMode::OrderPreserving || mode_geometry_ok(mode, pos, members)) {
      for (std::size_t j = 0; j < k; ++j) {
        std::size_t m = 0;
        for (std::size_t s = 0; s < k; ++s) {
          Point p = s == j ? pos : members[m++];
          xs[s] = p.x;
          ys[s] = p.y;
        }
        if (cond.holds(std::span<const Int>(xs.data(), k), std::span<const Int>(ys.data(), k))) {
          Proposal p = members;
          std::sort(p.begin(), p.end());
          p.erase(std::unique(p.begin(), p.end()), p.end());
          return p;
        }
      }
    }
    std::size_t i = 0;
    for (; i < r; ++i) {
      if (++idx[i] < pool.size()) break;
      idx[i] = 0;
    }
    if (i == r) return std::nullopt;
  }
}

}  // namespace detail

// (x,y) is N iff some proposal has every member in P.
inline GridOutcomeTable comply_outcomes_2d(const ConditionExpr& cond, AvoidanceMode mode, Int X, Int Y) {
  if (cond.arity() < 2) throw InvalidParams("condition arity must be at least 2");
  GridOutcomeTable t{cond, mode, X, Y, std::vector<Outcome>(static_cast<std::size_t>((X + 1) * (Y + 1)), Outcome::N),
                     mode == AvoidanceMode::Unrestricted};
  std::vector<char> col_p(static_cast<std::size_t>(X + 1), 0), row_p(static_cast<std::size_t>(Y + 1), 0);
  std::vector<Point> ps;
  std::vector<Point> pool;
  for (Int x = 0; x <= X; ++x) {
    std::vector<Point> column;
    for (Int y = 0; y <= Y; ++y) {
      bool n = col_p[static_cast<std::size_t>(x)] || row_p[static_cast<std::size_t>(y)];
      if (!n) {
        pool.clear();
        for (auto& p : ps)
          if (mode == AvoidanceMode::Unrestricted || p.y < y) pool.push_back(p);
        n = detail::find_all_p_tuple(cond, mode, {x, y}, pool).has_value();
      }
      if (!n) {
        t.cells[static_cast<std::size_t>(x * (Y + 1) + y)] = Outcome::P;
        col_p[static_cast<std::size_t>(x)] = 1;
        column.push_back({x, y});
      }
    }
    for (auto& p : column) {
      row_p[static_cast<std::size_t>(p.y)] = 1;
      ps.push_back(p);
    }
  }
  return t;
}

// A proposal whose members are all P, when pos is N.
inline std::optional<Proposal> best_proposal_2d(const GridOutcomeTable& t, Point pos) {
  if (t.at(pos) == Outcome::P) return std::nullopt;
  for (Int y = 0; y < pos.y; ++y)
    if (t.at(pos.x, y) == Outcome::P) return Proposal{{pos.x, y}};
  for (Int x = 0; x < pos.x; ++x)
    if (t.at(x, pos.y) == Outcome::P) return Proposal{{x, pos.y}};
  std::vector<Point> pool;
  for (auto& p : t.p_positions())
    if (p.x < pos.x && (t.mode == AvoidanceMode::Unrestricted || p.y < pos.y)) pool.push_back(p);
  return detail::find_all_p_tuple(t.condition, t.mode, pos, pool);
}

inline Point best_choice_2d(const GridOutcomeTable& t, const Proposal& proposal) {
  if (proposal.empty()) throw InvalidParams("empty proposal");
  for (auto& p : proposal)
    if (t.at(p) == Outcome::N) return p;
  return proposal.front();
}

struct TripleAP {
  Int x = 0, y = 0, z = 0;

  TripleAP(Int x_, Int y_, Int z_) : x(x_), y(y_), z(z_) {
    if (x < 0 || x >= y || x + z != 2 * y) throw InvalidParams("malformed triple: need 0 <= x < y and x + z = 2y");
  }
};

inline Outcome three_heap_classify(const TripleAP& t) {
  if (is_base3_01(t.z)) return Outcome::N;
  return is_base3_01(t.x) && is_base3_01(t.y) ? Outcome::P : Outcome::N;
}

namespace detail {

inline Outcome three_heap_rec(Int x, Int y, std::map<std::pair<Int, Int>, Outcome>& memo) {
  auto key = std::make_pair(x, y);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  Outcome o = Outcome::P;
  for (Int w : {x, y}) {
    for (Int d = 1; w - 2 * d >= 0 && o == Outcome::P; ++d)
      if (three_heap_rec(w - 2 * d, w - d, memo) == Outcome::P) o = Outcome::N;
  }
  memo.emplace(key, o);
  return o;
}

}  // namespace detail

// The mover keeps heap w in {x, y} and presents (w-2d, w-d, w).
inline Outcome three_heap_solve(const TripleAP& t) {
  std::map<std::pair<Int, Int>, Outcome> memo;
  return detail::three_heap_rec(t.x, t.y, memo);
}

}  // namespace comply
