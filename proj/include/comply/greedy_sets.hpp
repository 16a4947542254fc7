#pragma once

#include <map>
#include <optional>
#include <vector>

#include "conditions.hpp"
#include "instances.hpp"

namespace comply {

struct GreedySet {
  ConditionExpr condition;
  Int start = 0;
  std::vector<Int> seed;
  Int N = 0;
  std::vector<Int> elements;
  std::map<Int, std::vector<Int>> witnesses;  // excluded n -> instance tuple containing n

  bool contains(Int v) const { return std::binary_search(elements.begin(), elements.end(), v); }
};

inline Int default_start(const ConditionExpr& cond) { return family_coefficients_balanced(cond) ? 0 : 1; }

namespace detail {

// First instance inside values (all distinct); empty when none.
inline std::vector<Int> first_instance_in(const ConditionExpr& cond, const std::vector<Int>& values) {
  const std::size_t k = cond.arity();
  std::vector<Int> t(k);
  std::vector<std::size_t> pick(k, 0);
  if (values.empty()) return {};
  while (true) {
    for (std::size_t s = 0; s < k; ++s) t[s] = values[pick[s]];
    if (cond.holds(t)) return t;
    std::size_t s = 0;
    for (; s < k; ++s) {
      if (++pick[s] < values.size()) break;
      pick[s] = 0;
    }
    if (s == k) return {};
  }
}

}  // namespace detail

inline GreedySet greedy_avoid_set(const ConditionExpr& cond, Int N, std::vector<Int> seed, Int start) {
  std::sort(seed.begin(), seed.end());
  seed.erase(std::unique(seed.begin(), seed.end()), seed.end());
  for (Int v : seed)
    if (v < 0) throw InvalidParams("seed values must be natural numbers");
  if (!detail::first_instance_in(cond, seed).empty()) throw InvalidParams("seed violates the condition");

  GreedySet g{cond, start, seed, N, {}, {}};
  InstancePlan plan(cond);
  const Int top = std::max(N, seed.empty() ? 0 : seed.back());
  std::vector<std::int32_t> position(static_cast<std::size_t>(top + 1), -1);
  auto add = [&](Int v) {
    position[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(g.elements.size());
    g.elements.push_back(v);
  };
  std::size_t next_seed = 0;
  for (Int n = 0; n <= N; ++n) {
    if (next_seed < seed.size() && seed[next_seed] == n) {
      add(n);
      ++next_seed;
      continue;
    }
    if (n < start) continue;
    SetHistory h{g.elements, position};
    std::vector<Int> witness;
    plan.for_each(h, n, [&](const Instance& ins) {
      if (ins.image && *ins.image != n) return false;
      witness.resize(ins.arity);
      for (std::size_t s = 0; s < ins.arity; ++s)
        witness[s] = ins.slots[s] < 0 ? n : h.input(static_cast<std::size_t>(ins.slots[s]));
      return true;
    });
    if (witness.empty())
      add(n);
    else
      g.witnesses.emplace(n, std::move(witness));
  }
  for (; next_seed < seed.size(); ++next_seed) g.elements.push_back(seed[next_seed]);
  return g;
}

inline GreedySet greedy_avoid_set(const ConditionExpr& cond, Int N) {
  return greedy_avoid_set(cond, N, {}, default_start(cond));
}

inline GreedySet stanley_sequence(std::vector<Int> initial, Int N) {
  if (initial.empty()) throw InvalidParams("initial set must be nonempty");
  auto top = *std::max_element(initial.begin(), initial.end());
  try {
    return greedy_avoid_set(ap(3), N, std::move(initial), top + 1);
  } catch (const InvalidParams&) {
    throw InvalidParams("initial set contains a 3-term arithmetic progression");
  }
}

inline bool is_basek_01(Int x, Int k) {
  if (x < 0) return false;
  for (; x > 0; x /= k)
    if (x % k > 1) return false;
  return true;
}

inline bool is_base3_01(Int x) { return is_basek_01(x, 3); }

inline std::vector<Int> basek_01_members(Int k, Int N) {
  if (k < 2) throw InvalidParams("base must be at least 2");
  std::vector<Int> out;
  for (Int x = 0; x <= N; ++x)
    if (is_basek_01(x, k)) out.push_back(x);
  return out;
}

inline std::vector<Int> base3_members(Int N) { return basek_01_members(3, N); }

inline bool is_prime(Int k) {
  if (k < 2) return false;
  for (Int d = 2; d * d <= k; ++d)
    if (k % d == 0) return false;
  return true;
}

// Literal digit rule: the least base-k digit is never 0 and no other digit is k-1.
inline std::vector<Int> kprime_closed_form(Int k, Int N) {
  if (!is_prime(k)) throw InvalidParams("k must be prime");
  std::vector<Int> out;
  for (Int x = 1; x <= N; ++x) {
    if (x % k == 0) continue;
    bool ok = true;
    for (Int y = x / k; y > 0 && ok; y /= k) ok = y % k != k - 1;
    if (ok) out.push_back(x);
  }
  return out;
}

inline std::vector<Int> density_profile(const std::vector<Int>& sorted, const std::vector<Int>& checkpoints) {
  std::vector<Int> out;
  for (Int c : checkpoints)
    out.push_back(static_cast<Int>(std::upper_bound(sorted.begin(), sorted.end(), c) - sorted.begin()));
  return out;
}

}  // namespace comply
