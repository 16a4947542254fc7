#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "conditions.hpp"
#include "instances.hpp"

namespace comply {

enum class Outcome : char { P = 'P', N = 'N' };

inline char outcome_char(Outcome o) { return static_cast<char>(o); }

inline Int mex(std::span<const Int> values) {
  std::vector<char> seen(values.size() + 1, 0);
  for (Int v : values)
    if (v >= 0 && v < static_cast<Int>(seen.size())) seen[static_cast<std::size_t>(v)] = 1;
  Int m = 0;
  while (seen[static_cast<std::size_t>(m)]) ++m;
  return m;
}

inline Int mex(std::initializer_list<Int> values) { return mex(std::span<const Int>(values.begin(), values.size())); }

struct OutcomeTable {
  std::string game;
  Int N = 0;
  std::vector<Outcome> outcomes;

  Outcome at(Int x) const {
    if (x < 0 || x > N) throw OutOfTable("heap " + std::to_string(x) + " outside [0," + std::to_string(N) + "]");
    return outcomes[static_cast<std::size_t>(x)];
  }
  std::vector<Int> positions(Outcome o) const {
    std::vector<Int> out;
    for (Int x = 0; x <= N; ++x)
      if (outcomes[static_cast<std::size_t>(x)] == o) out.push_back(x);
    return out;
  }
  std::vector<Int> p_positions() const { return positions(Outcome::P); }
  std::vector<Int> n_positions() const { return positions(Outcome::N); }
};

struct NimValueTable {
  std::vector<Int> S;
  std::vector<Int> g;
};

inline NimValueTable subtraction_nim_values(std::vector<Int> S, Int N) {
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  if (S.empty() || S.front() <= 0) throw InvalidParams("subtraction set must be nonempty and positive");
  NimValueTable t{S, std::vector<Int>(static_cast<std::size_t>(N + 1), 0)};
  std::vector<Int> opts;
  for (Int x = 0; x <= N; ++x) {
    opts.clear();
    for (Int s : S)
      if (s <= x) opts.push_back(t.g[static_cast<std::size_t>(x - s)]);
    t.g[static_cast<std::size_t>(x)] = mex(opts);
  }
  return t;
}

using MoveSet = std::vector<Int>;

// Heaps lo..hi-1, each its own image.
struct RangeHistory {
  Int lo = 0, hi = 0;

  std::size_t size() const { return hi > lo ? static_cast<std::size_t>(hi - lo) : 0; }
  Int input(std::size_t i) const { return lo + static_cast<Int>(i); }
  Int image(std::size_t i) const { return lo + static_cast<Int>(i); }
  std::ptrdiff_t find(Int v) const { return v >= lo && v < hi ? static_cast<std::ptrdiff_t>(v - lo) : -1; }
};

// A comply game on one heap, given by the option sets applicable at each heap.
class GameFamily {
 public:
  static GameFamily explicit_sets(std::vector<MoveSet> sets) {
    GameFamily g;
    g.kind_ = Kind::explicit_sets;
    for (auto& s : sets) {
      if (s.empty()) throw InvalidParams("move set must be nonempty");
      for (Int v : s)
        if (v <= 0) throw InvalidParams("move set members must be positive");
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    g.sets_ = std::move(sets);
    g.description_ = "explicit";
    return g;
  }

  // {{d,2d} | d in D}; d = 0 is ignored.
  static GameFamily discrepancy_pairs(std::function<bool(Int)> in_d, std::string description) {
    GameFamily g;
    g.kind_ = Kind::pairs;
    g.in_d_ = std::move(in_d);
    g.description_ = std::move(description);
    return g;
  }

  // Heap-dependent sets: the other entries of condition instances containing x
  // whose entries lie in [terminal, x).
  static GameFamily condition_generated(const ConditionExpr& cond, Int terminal) {
    if (cond.arity() < 2) throw InvalidParams("condition arity must be at least 2");
    GameFamily g;
    g.kind_ = Kind::generated;
    g.plan_ = std::make_shared<InstancePlan>(cond);
    g.terminal_ = terminal;
    g.description_ = cond.to_string();
    return g;
  }

  const std::string& description() const { return description_; }

  // fn(std::span<const Int> targets) for each applicable set; return true to stop.
  template <class Fn>
  void for_each_option_set(Int x, Fn&& fn) const {
    std::vector<Int> targets;
    switch (kind_) {
      case Kind::explicit_sets:
        for (auto& s : sets_) {
          if (s.back() > x) continue;
          targets.clear();
          for (Int v : s) targets.push_back(x - v);
          if (fn(std::span<const Int>(targets))) return;
        }
        break;
      case Kind::pairs:
        for (Int d = 1; 2 * d <= x; ++d) {
          if (!in_d_(d)) continue;
          const Int t[2] = {x - d, x - 2 * d};
          if (fn(std::span<const Int>(t, 2))) return;
        }
        break;
      case Kind::generated: {
        RangeHistory h{terminal_, x};
        plan_->for_each(h, x, [&](const Instance& ins) {
          if (ins.image && *ins.image != x) return false;
          targets.clear();
          for (std::size_t s = 0; s < ins.arity; ++s)
            if (ins.slots[s] >= 0) targets.push_back(h.input(static_cast<std::size_t>(ins.slots[s])));
          std::sort(targets.begin(), targets.end());
          targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
          return static_cast<bool>(fn(std::span<const Int>(targets)));
        });
        break;
      }
    }
  }

 private:
  enum class Kind { explicit_sets, pairs, generated };
  Kind kind_ = Kind::explicit_sets;
  std::vector<MoveSet> sets_;
  std::function<bool(Int)> in_d_;
  std::shared_ptr<const InstancePlan> plan_;
  Int terminal_ = 0;
  std::string description_;
};

inline GameFamily all_discrepancy_pairs() {
  return GameFamily::discrepancy_pairs([](Int) { return true; }, "{{d,2d} | d >= 1}");
}

// Next player proposes: x is N iff some applicable set has every target in P.
inline OutcomeTable comply_number_outcomes(const GameFamily& game, Int N) {
  OutcomeTable t{game.description(), N, std::vector<Outcome>(static_cast<std::size_t>(N + 1), Outcome::P)};
  for (Int x = 0; x <= N; ++x) {
    bool win = false;
    game.for_each_option_set(x, [&](std::span<const Int> targets) {
      win = std::all_of(targets.begin(), targets.end(),
                        [&](Int y) { return t.outcomes[static_cast<std::size_t>(y)] == Outcome::P; });
      return win;
    });
    t.outcomes[static_cast<std::size_t>(x)] = win ? Outcome::N : Outcome::P;
  }
  return t;
}

// Previous player proposes: x is N iff every applicable set has a target in P.
inline OutcomeTable comply_set_outcomes(const GameFamily& game, Int N) {
  OutcomeTable t{game.description(), N, std::vector<Outcome>(static_cast<std::size_t>(N + 1), Outcome::N)};
  for (Int x = 0; x <= N; ++x) {
    bool escape = false;
    game.for_each_option_set(x, [&](std::span<const Int> targets) {
      escape = std::none_of(targets.begin(), targets.end(),
                            [&](Int y) { return t.outcomes[static_cast<std::size_t>(y)] == Outcome::P; });
      return escape;
    });
    t.outcomes[static_cast<std::size_t>(x)] = escape ? Outcome::P : Outcome::N;
  }
  return t;
}

inline OutcomeTable noninvariant_outcomes(const ConditionExpr& cond, Int N, Int terminal) {
  return comply_number_outcomes(GameFamily::condition_generated(cond, terminal), N);
}

// P-positions of {{d,2d} | d in D} up to N.
inline std::vector<Int> star(const std::function<bool(Int)>& in_d, Int N) {
  return comply_number_outcomes(GameFamily::discrepancy_pairs(in_d, "star"), N).p_positions();
}

inline std::vector<Int> star(const std::vector<Int>& sorted_d, Int N) {
  return star([&](Int d) { return std::binary_search(sorted_d.begin(), sorted_d.end(), d); }, N);
}

struct Realizability {
  bool realizable = false;
  Int witness = -1;       // set when not realizable
  std::vector<Int> S;     // constructed subtraction set when realizable
  bool reproduces = false;  // S regenerates the input on the horizon
};

namespace detail {

inline std::vector<char> differences(const std::vector<char>& member, Int horizon) {
  std::vector<char> diff(static_cast<std::size_t>(horizon + 1), 0);
  std::vector<Int> elems;
  for (Int a = 0; a <= horizon; ++a)
    if (member[static_cast<std::size_t>(a)]) elems.push_back(a);
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j) diff[static_cast<std::size_t>(elems[j] - elems[i])] = 1;
  return diff;
}

}  // namespace detail

// Whether A can be the P-set of a subtraction game, judged on [0, horizon].
inline Realizability realizable_as_subtraction_P(const std::vector<Int>& A, Int horizon) {
  std::vector<char> in(static_cast<std::size_t>(horizon + 1), 0);
  for (Int a : A) {
    if (a < 0 || a > horizon) throw InvalidParams("set element outside [0, horizon]");
    in[static_cast<std::size_t>(a)] = 1;
  }
  Realizability r;
  if (!in[0]) {
    r.witness = 0;
    return r;
  }
  auto diff = detail::differences(in, horizon);
  std::set<Int> S;
  for (Int a = 1; a <= horizon; ++a) {
    if (in[static_cast<std::size_t>(a)]) continue;
    Int pick = -1;
    for (Int b = a - 1; b >= 0 && pick < 0; --b)
      if (in[static_cast<std::size_t>(b)] && !diff[static_cast<std::size_t>(a - b)]) pick = a - b;
    if (pick < 0) {
      r.witness = a;
      return r;
    }
    S.insert(pick);
  }
  r.realizable = true;
  r.S.assign(S.begin(), S.end());
  if (r.S.empty()) {
    r.reproduces = true;
  } else {
    auto g = subtraction_nim_values(r.S, horizon).g;
    r.reproduces = true;
    for (Int x = 0; x <= horizon; ++x)
      r.reproduces = r.reproduces && ((g[static_cast<std::size_t>(x)] == 0) == (in[static_cast<std::size_t>(x)] != 0));
  }
  return r;
}

// Whether f can be the nim-value function of a subtraction game, judged on its
// finite horizon. A move s is impossible when it joins two equal values; a
// position a with f(a) > 0 is refuted when some value u < f(a) is unreachable.
inline Realizability realizable_as_nim_values(const std::vector<Int>& f) {
  Realizability r;
  if (f.empty()) throw InvalidParams("empty value table");
  const Int N = static_cast<Int>(f.size()) - 1;
  if (f[0] != 0) {
    r.witness = 0;
    return r;
  }
  std::vector<char> zero(f.size(), 0);
  for (std::size_t i = 0; i < f.size(); ++i) zero[i] = f[i] == 0;
  auto blocked = detail::differences(zero, N);
  for (Int a = 1; a <= N; ++a) {
    for (Int u = 0; u < f[static_cast<std::size_t>(a)]; ++u) {
      bool reachable = false;
      for (Int b = 0; b < a && !reachable; ++b)
        reachable = f[static_cast<std::size_t>(b)] == u && !blocked[static_cast<std::size_t>(a - b)];
      if (!reachable) {
        r.witness = a;
        return r;
      }
    }
  }
  r.realizable = true;
  for (Int s = 1; s <= N; ++s) {
    bool ok = true;
    for (Int b = 0; b + s <= N && ok; ++b) ok = f[static_cast<std::size_t>(b)] != f[static_cast<std::size_t>(b + s)];
    if (ok) r.S.push_back(s);
  }
  if (r.S.empty()) {
    r.reproduces = N == 0;
  } else {
    r.reproduces = subtraction_nim_values(r.S, N).g == f;
  }
  return r;
}

}  // namespace comply
