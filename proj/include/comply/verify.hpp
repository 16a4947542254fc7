#pragma once

// Naive reference implementations. They rely only on ConditionExpr::holds and
// plain loops, so they can be checked against the optimized engines.

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "conditions.hpp"
#include "greedy_injections.hpp"
#include "greedy_sets.hpp"
#include "heap_games.hpp"
#include "multiheap.hpp"

namespace comply::verify {

struct Violation {
  std::vector<Int> tuple;
};

// Every k-tuple over the set (repetition allowed) on which cond holds.
inline std::vector<Violation> naive_condition_scan(const ConditionExpr& cond, const std::vector<Int>& set,
                                                   std::size_t limit = 1000) {
  std::vector<Violation> out;
  const std::size_t k = cond.arity();
  if (set.empty()) return out;
  std::vector<std::size_t> idx(k, 0);
  std::vector<Int> t(k);
  while (out.size() < limit) {
    for (std::size_t i = 0; i < k; ++i) t[i] = set[idx[i]];
    if (cond.holds(t)) out.push_back({t});
    std::size_t i = 0;
    for (; i < k; ++i) {
      if (++idx[i] < set.size()) break;
      idx[i] = 0;
    }
    if (i == k) break;
  }
  return out;
}

// Whether some tuple with n in exactly one slot and other entries from set holds.
inline bool naive_excludes(const ConditionExpr& cond, const std::vector<Int>& set, Int n) {
  const std::size_t k = cond.arity();
  std::vector<Int> t(k);
  for (std::size_t j = 0; j < k; ++j) {
    if (set.empty()) {
      if (k == 1) {
        t[0] = n;
        if (cond.holds(t)) return true;
      }
      continue;
    }
    std::vector<std::size_t> idx(k, 0);
    while (true) {
      for (std::size_t s = 0; s < k; ++s) t[s] = s == j ? n : set[idx[s]];
      if (cond.holds(t)) return true;
      std::size_t s = 0;
      for (; s < k; ++s) {
        if (s == j) continue;
        if (++idx[s] < set.size()) break;
        idx[s] = 0;
      }
      if (s == k) break;
    }
  }
  return false;
}

inline std::vector<Int> brute_force_greedy(const ConditionExpr& cond, Int N, std::vector<Int> seed, Int start) {
  std::sort(seed.begin(), seed.end());
  std::vector<Int> set;
  for (Int n = 0; n <= N; ++n) {
    if (std::binary_search(seed.begin(), seed.end(), n)) {
      set.push_back(n);
      continue;
    }
    if (n < start) continue;
    if (!naive_excludes(cond, set, n)) set.push_back(n);
  }
  for (Int s : seed)
    if (s > N) set.push_back(s);
  return set;
}

// Whether assigning pi(n) = v completes an instance admitted by the mode,
// found by scanning every tuple of earlier inputs.
inline bool naive_forbidden(const ConditionExpr& cond, AvoidanceMode mode, const std::vector<Int>& prefix, Int v) {
  const std::size_t k = cond.arity();
  const Int n = static_cast<Int>(prefix.size());
  if (n == 0) return false;
  std::vector<Int> xs(k), ys(k);
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<std::size_t> idx(k, 0);
    while (true) {
      bool admissible = true;
      for (std::size_t s = 0; s < k; ++s) {
        xs[s] = s == j ? n : static_cast<Int>(idx[s]);
        ys[s] = s == j ? v : prefix[idx[s]];
        if (s != j && mode == AvoidanceMode::MaxAc && ys[s] >= v) admissible = false;
      }
      if (mode == AvoidanceMode::OrderPreserving)
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b < k; ++b)
            if (xs[a] < xs[b] && ys[a] >= ys[b]) admissible = false;
      if (admissible && cond.holds(xs, ys)) return true;
      std::size_t s = 0;
      for (; s < k; ++s) {
        if (s == j) continue;
        if (++idx[s] < prefix.size()) break;
        idx[s] = 0;
      }
      if (s == k) break;
    }
  }
  return false;
}

inline std::vector<Int> brute_force_injection(const ConditionExpr& cond, AvoidanceMode mode, Int N) {
  std::vector<Int> prefix{0};
  std::vector<char> used{1};
  for (Int n = 1; n <= N; ++n) {
    for (Int v = 1;; ++v) {
      if (v < static_cast<Int>(used.size()) && used[static_cast<std::size_t>(v)]) continue;
      if (naive_forbidden(cond, mode, prefix, v)) continue;
      prefix.push_back(v);
      if (v >= static_cast<Int>(used.size())) used.resize(static_cast<std::size_t>(v + 1), 0);
      used[static_cast<std::size_t>(v)] = 1;
      break;
    }
  }
  return prefix;
}

// First n at which the greedy choice is not minimal, or nullopt.
inline std::optional<Int> check_greedy_minimality(const GreedyInjection& g) {
  std::vector<Int> prefix{0};
  std::vector<char> used(static_cast<std::size_t>(*std::max_element(g.images.begin(), g.images.end()) + 1), 0);
  used[0] = 1;
  for (Int n = 1; n <= g.N(); ++n) {
    Int pick = g.images[static_cast<std::size_t>(n)];
    for (Int v = 1; v < pick; ++v)
      if (!used[static_cast<std::size_t>(v)] && !naive_forbidden(g.condition, g.mode, prefix, v)) return n;
    if (used[static_cast<std::size_t>(pick)] || naive_forbidden(g.condition, g.mode, prefix, pick)) return n;
    used[static_cast<std::size_t>(pick)] = 1;
    prefix.push_back(pick);
  }
  return std::nullopt;
}

using TargetLister = std::function<std::vector<std::vector<Int>>(Int)>;

inline TargetLister explicit_targets(std::vector<std::vector<Int>> sets) {
  return [sets = std::move(sets)](Int x) {
    std::vector<std::vector<Int>> out;
    for (auto& s : sets) {
      bool fits = true;
      std::vector<Int> t;
      for (Int v : s) {
        fits = fits && v <= x;
        t.push_back(x - v);
      }
      if (fits) out.push_back(t);
    }
    return out;
  };
}

inline TargetLister pair_targets(std::function<bool(Int)> in_d) {
  return [in_d = std::move(in_d)](Int x) {
    std::vector<std::vector<Int>> out;
    for (Int d = 1; d <= x / 2; ++d)
      if (in_d(d)) out.push_back({x - d, x - 2 * d});
    return out;
  };
}

// Top-down memoized comply recursion. number: the next player proposes.
inline OutcomeTable exhaustive_comply_solver(const TargetLister& sets, Int N, bool number = true) {
  std::map<Int, Outcome> memo;
  std::function<Outcome(Int)> solve = [&](Int x) -> Outcome {
    if (auto it = memo.find(x); it != memo.end()) return it->second;
    Outcome o;
    if (number) {
      o = Outcome::P;
      for (auto& t : sets(x)) {
        bool all_p = true;
        for (Int y : t) all_p = all_p && solve(y) == Outcome::P;
        if (all_p) o = Outcome::N;
      }
    } else {
      o = Outcome::N;
      for (auto& t : sets(x)) {
        bool any_p = false;
        for (Int y : t) any_p = any_p || solve(y) == Outcome::P;
        if (!any_p) o = Outcome::P;
      }
    }
    memo[x] = o;
    return o;
  };
  OutcomeTable t{"oracle", N, {}};
  for (Int x = 0; x <= N; ++x) t.outcomes.push_back(solve(x));
  return t;
}

inline GridOutcomeTable exhaustive_2d_solver(const ConditionExpr& cond, AvoidanceMode mode, Int X, Int Y) {
  std::map<std::pair<Int, Int>, Outcome> memo;
  const std::size_t k = cond.arity();
  std::function<Outcome(Int, Int)> solve = [&](Int x, Int y) -> Outcome {
    if (auto it = memo.find({x, y}); it != memo.end()) return it->second;
    Outcome o = Outcome::P;
    for (Int a = 0; a < x && o == Outcome::P; ++a)
      if (solve(a, y) == Outcome::P) o = Outcome::N;
    for (Int b = 0; b < y && o == Outcome::P; ++b)
      if (solve(x, b) == Outcome::P) o = Outcome::N;
    if (o == Outcome::P) {
      std::vector<std::pair<Int, Int>> pool;
      const Int top = mode == AvoidanceMode::Unrestricted ? Y : y - 1;
      for (Int a = 0; a < x; ++a)
        for (Int b = 0; b <= top; ++b)
          if (solve(a, b) == Outcome::P) pool.push_back({a, b});
      // ordered (k-1)-tuples from the pool, new point in every slot
      std::vector<std::size_t> idx(k - 1, 0);
      std::vector<Int> xs(k), ys(k);
      while (!pool.empty() && o == Outcome::P) {
        bool ordered = true;
        if (mode == AvoidanceMode::OrderPreserving)
          for (auto i : idx)
            for (auto j : idx)
              if (pool[i].first < pool[j].first && pool[i].second >= pool[j].second) ordered = false;
        for (std::size_t j = 0; j < k && ordered && o == Outcome::P; ++j) {
          std::size_t m = 0;
          for (std::size_t s = 0; s < k; ++s) {
            if (s == j) {
              xs[s] = x;
              ys[s] = y;
            } else {
              xs[s] = pool[idx[m]].first;
              ys[s] = pool[idx[m]].second;
              ++m;
            }
          }
          if (cond.holds(xs, ys)) o = Outcome::N;
        }
        std::size_t i = 0;
        for (; i + 1 < k; ++i) {
          if (++idx[i] < pool.size()) break;
          idx[i] = 0;
        }
        if (i + 1 == k) break;
      }
    }
    memo[{x, y}] = o;
    return o;
  };
  GridOutcomeTable t{cond, mode, X, Y, {}, mode == AvoidanceMode::Unrestricted};
  for (Int x = 0; x <= X; ++x)
    for (Int y = 0; y <= Y; ++y) t.cells.push_back(solve(x, y));
  return t;
}

// Whether an atom holds by scanning every family member up to the bound.
inline bool holds_by_members(const FormFamily& fam, std::span<const Int> xs, std::span<const Int> ys) {
  Int bound = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) bound = std::max({bound, std::abs(xs[i]), std::abs(ys[i])});
  for (auto& sys : fam.members(2 * bound + 1)) {
    bool vanish = true;
    for (auto& f : sys) vanish = vanish && f.evaluate(xs) == 0 && f.evaluate(ys) == 0;
    if (vanish && !fam.member_trivial(sys, xs, ys)) return true;
  }
  return false;
}

// Random explicit families: up to max_sets sets of values in [1, max_value].
inline std::vector<std::vector<Int>> random_family(std::mt19937_64& rng, int max_sets = 8, Int max_value = 20) {
  std::uniform_int_distribution<int> nsets(1, max_sets), size(1, 3);
  std::uniform_int_distribution<Int> value(1, max_value);
  std::vector<std::vector<Int>> family;
  for (int i = nsets(rng); i > 0; --i) {
    std::vector<Int> s;
    for (int j = size(rng); j > 0; --j) s.push_back(value(rng));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    family.push_back(s);
  }
  return family;
}

struct Divergence {
  std::string check;
  std::string detail;  // minimal counterexample
};

struct HarnessReport {
  std::vector<std::string> checks;
  std::vector<Divergence> divergences;
  bool ok() const { return divergences.empty(); }
};

namespace detail {

template <class A, class B>
std::optional<std::size_t> first_difference(const A& a, const B& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (!(a[i] == b[i])) return i;
  if (a.size() != b.size()) return n;
  return std::nullopt;
}

}  // namespace detail

// Compares optimized engines against the oracles at small sizes.
// Sizes: 1D greedy N=500 (N=60 for arity 4); injections N=40 (N=20 for arity 4);
// comply tables N=500; grids 30x30 for arity <= 3 and 12x12 for arity 4.
inline HarnessReport run_oracle_harness(std::uint64_t seed = 1) {
  HarnessReport r;
  auto record = [&](const std::string& check, const std::string& what) { r.divergences.push_back({check, what}); };

  const std::vector<ConditionExpr> builtins = {ap(3),     ap(4),      mean(3),    mean(4), sidon(2),
                                               ky_xz(1),  ky_xz(3),   line(),     parallel(), diagonal(),
                                               empty_condition()};
  for (auto& c : builtins) {
    const Int N = c.arity() >= 4 ? 60 : 500;
    const Int start = default_start(c);
    auto fast = greedy_avoid_set(c, N, {}, start);
    auto slow = brute_force_greedy(c, N, {}, start);
    std::string name = "greedy-set " + c.to_string();
    r.checks.push_back(name);
    if (auto i = detail::first_difference(fast.elements, slow))
      record(name, "element index " + std::to_string(*i));
    for (auto& [n, w] : fast.witnesses)
      if (!c.holds(w)) record(name, "witness for " + std::to_string(n) + " does not hold");
    for (auto& v : naive_condition_scan(c, fast.elements))
      if (std::count(v.tuple.begin(), v.tuple.end(), *std::max_element(v.tuple.begin(), v.tuple.end())) == 1) {
        record(name, "set contains an instance");
        break;
      }
  }
  {
    auto fast = stanley_sequence({0, 2}, 200).elements;
    auto slow = brute_force_greedy(ap(3), 200, {0, 2}, 3);
    r.checks.push_back("stanley {0,2}");
    if (auto i = detail::first_difference(fast, slow)) record("stanley {0,2}", "element index " + std::to_string(*i));
  }

  const std::vector<ConditionExpr> perm_conds = {ap(3), mean(3), sidon(2), line(), parallel(), diagonal(),
                                                 empty_condition()};
  for (auto& c : perm_conds)
    for (auto m : {AvoidanceMode::Unrestricted, AvoidanceMode::MaxAc, AvoidanceMode::OrderPreserving}) {
      const Int N = c.arity() >= 4 ? 20 : 40;
      auto fast = greedy_injection(c, m, N);
      auto slow = brute_force_injection(c, m, N);
      std::string name = std::string("injection ") + c.to_string() + " " + mode_name(m);
      r.checks.push_back(name);
      if (auto i = detail::first_difference(fast.images, slow)) record(name, "n=" + std::to_string(*i));
    }

  {
    const Int N = 500;
    auto fast = comply_number_outcomes(all_discrepancy_pairs(), N);
    auto slow = exhaustive_comply_solver(pair_targets([](Int) { return true; }), N);
    r.checks.push_back("comply-number {d,2d}");
    if (auto i = detail::first_difference(fast.outcomes, slow.outcomes))
      record("comply-number {d,2d}", "heap " + std::to_string(*i));
  }
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 10; ++trial) {
    auto fam = random_family(rng);
    auto game = GameFamily::explicit_sets(fam);
    for (bool number : {true, false}) {
      auto fast = number ? comply_number_outcomes(game, 500) : comply_set_outcomes(game, 500);
      auto slow = exhaustive_comply_solver(explicit_targets(fam), 500, number);
      std::string name = std::string(number ? "comply-number" : "comply-set") + " random #" + std::to_string(trial);
      r.checks.push_back(name);
      if (auto i = detail::first_difference(fast.outcomes, slow.outcomes)) record(name, "heap " + std::to_string(*i));
    }
  }

  struct GridCase {
    ConditionExpr cond;
    AvoidanceMode mode;
    Int size;
  };
  const std::vector<GridCase> grids = {
      {empty_condition(), AvoidanceMode::MaxAc, 30}, {diagonal(), AvoidanceMode::MaxAc, 30},
      {ap(3), AvoidanceMode::MaxAc, 30},            {ap(3), AvoidanceMode::OrderPreserving, 30},
      {ap(3), AvoidanceMode::Unrestricted, 20},     {line(), AvoidanceMode::MaxAc, 30},
      {mean(3), AvoidanceMode::MaxAc, 30},          {sidon(2), AvoidanceMode::MaxAc, 12},
      {sidon(2), AvoidanceMode::OrderPreserving, 12}};
  for (auto& g : grids) {
    auto fast = comply_outcomes_2d(g.cond, g.mode, g.size, g.size);
    auto slow = exhaustive_2d_solver(g.cond, g.mode, g.size, g.size);
    std::string name = "grid " + g.cond.to_string() + " " + mode_name(g.mode);
    r.checks.push_back(name);
    if (auto i = detail::first_difference(fast.cells, slow.cells)) {
      Int x = static_cast<Int>(*i) / (g.size + 1), y = static_cast<Int>(*i) % (g.size + 1);
      record(name, "cell (" + std::to_string(x) + "," + std::to_string(y) + ")");
    }
  }
  return r;
}

}  // namespace comply::verify
