#pragma once

#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conditions.hpp"
#include "instances.hpp"

namespace comply {

struct GreedyInjection {
  ConditionExpr condition;
  AvoidanceMode mode;
  std::string name;
  std::vector<Int> images;  // images[n] = pi(n)

  Int N() const { return static_cast<Int>(images.size()) - 1; }
  Int pi(Int n) const {
    if (n < 0 || n > N()) throw OutOfTable("input " + std::to_string(n) + " outside prefix");
    return images[static_cast<std::size_t>(n)];
  }
  std::vector<std::pair<Int, Int>> pairs() const {
    std::vector<std::pair<Int, Int>> out;
    for (std::size_t n = 0; n < images.size(); ++n) out.emplace_back(static_cast<Int>(n), images[n]);
    return out;
  }
};

inline Int default_cap(Int n) { return 16 * (n + 4); }

// pi(0) = 0; pi(n) is the least unused positive value not forbidden at n.
inline GreedyInjection greedy_injection(const ConditionExpr& cond, AvoidanceMode mode, Int N,
                                        std::optional<Int> cap = std::nullopt) {
  GreedyInjection g{cond, mode, cond.to_string(), {0}};
  InstancePlan plan(cond);
  std::vector<char> used{1};
  std::vector<Int> stamp;
  for (Int n = 1; n <= N; ++n) {
    const Int c = cap ? *cap : default_cap(n);
    if (static_cast<Int>(stamp.size()) <= c) stamp.resize(static_cast<std::size_t>(c + 1), -1);
    if (static_cast<Int>(used.size()) <= c) used.resize(static_cast<std::size_t>(c + 1), 0);
    PrefixHistory h{g.images};
    plan.for_each(h, n, [&](const Instance& ins) {
      if (!ins.image) throw CandidateSearchExhausted(n, c);
      Int v = *ins.image;
      if (v >= 1 && v <= c && mode_allows(mode, h, ins, n, v)) stamp[static_cast<std::size_t>(v)] = n;
      return false;
    });
    Int pick = -1;
    for (Int v = 1; v <= c && pick < 0; ++v)
      if (!used[static_cast<std::size_t>(v)] && stamp[static_cast<std::size_t>(v)] != n) pick = v;
    if (pick < 0) throw CandidateSearchExhausted(n, c);
    used[static_cast<std::size_t>(pick)] = 1;
    g.images.push_back(pick);
  }
  return g;
}

namespace detail {

// Row greedy under |dx| != dy: sigma(y) is the least unused x whose diagonal
// differences to all earlier rows differ from the row distance. Returns the
// inverse on 0..N.
inline std::vector<Int> asymmetric_wythoff(Int N) {
  std::vector<Int> inverse(static_cast<std::size_t>(N + 1), -1);
  std::vector<Int> sigma{0};
  std::vector<char> used(static_cast<std::size_t>(N + 2), 0);
  used[0] = 1;
  inverse[0] = 0;
  Int covered = 1;
  const Int cap = default_cap(N);
  for (Int y = 1; covered <= N; ++y) {
    if (y > cap) throw CandidateSearchExhausted(N, cap);
    Int x = 1;
    for (;; ++x) {
      if (x < static_cast<Int>(used.size()) && used[static_cast<std::size_t>(x)]) continue;
      bool ok = true;
      for (Int yp = 0; yp < y && ok; ++yp) ok = std::abs(x - sigma[static_cast<std::size_t>(yp)]) != y - yp;
      if (ok) break;
    }
    sigma.push_back(x);
    if (x >= static_cast<Int>(used.size())) used.resize(static_cast<std::size_t>(x + 1), 0);
    used[static_cast<std::size_t>(x)] = 1;
    if (x <= N) {
      inverse[static_cast<std::size_t>(x)] = y;
      ++covered;
    }
  }
  return inverse;
}

}  // namespace detail

inline std::vector<std::string> named_instances() {
  return {"nim", "wythoff", "kterm", "sidon", "line", "parallel", "mean"};
}

// Named instances; "wythoff" with Unrestricted gives the asymmetric variant.
inline GreedyInjection named(const std::string& name, AvoidanceMode mode, Int N) {
  if (name == "nim") return greedy_injection(empty_condition(), mode, N);
  if (name == "wythoff") {
    if (mode != AvoidanceMode::Unrestricted) return greedy_injection(diagonal(), mode, N);
    return GreedyInjection{diagonal(), mode, "wythoff-asymmetric", detail::asymmetric_wythoff(N)};
  }
  if (name == "kterm") return greedy_injection(ap(3), mode, N);
  if (name == "sidon") return greedy_injection(sidon(2), mode, N);
  if (name == "line") return greedy_injection(line(), mode, N);
  if (name == "parallel") return greedy_injection(parallel(), mode, N);
  if (name == "mean") return greedy_injection(mean(3), mode, N);
  throw InvalidParams("unknown instance '" + name + "'");
}

struct InvolutionReport {
  bool involution = true;
  std::optional<Int> witness;     // least n with pi(pi(n)) != n
  std::vector<Int> unverifiable;  // n with pi(n) beyond the prefix
};

inline InvolutionReport is_involution(const GreedyInjection& g) {
  InvolutionReport r;
  for (Int n = 0; n <= g.N(); ++n) {
    Int m = g.images[static_cast<std::size_t>(n)];
    if (m > g.N()) {
      r.unverifiable.push_back(n);
    } else if (g.images[static_cast<std::size_t>(m)] != n && !r.witness) {
      r.witness = n;
      r.involution = false;
    }
  }
  return r;
}

struct Ratio {
  Int num = 0, den = 1;

  friend bool operator<(const Ratio& a, const Ratio& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator==(const Ratio& a, const Ratio& b) { return a.num * b.den == b.num * a.den; }
  friend bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }
};

struct RatioBounds {
  Ratio min, max;
  Int argmin = 0, argmax = 0;
};

inline RatioBounds ratio_bounds(const GreedyInjection& g) {
  if (g.N() < 1) throw InvalidParams("ratio bounds need N >= 1");
  RatioBounds b{{g.images[1], 1}, {g.images[1], 1}, 1, 1};
  for (Int n = 2; n <= g.N(); ++n) {
    Ratio r{g.images[static_cast<std::size_t>(n)], n};
    if (r < b.min) b.min = r, b.argmin = n;
    if (b.max < r) b.max = r, b.argmax = n;
  }
  return b;
}

inline Int permutation_coverage(const GreedyInjection& g) {
  std::vector<char> seen(g.images.size() + 1, 0);
  for (Int v : g.images)
    if (v < static_cast<Int>(seen.size())) seen[static_cast<std::size_t>(v)] = 1;
  Int m = 0;
  while (seen[static_cast<std::size_t>(m)]) ++m;
  return m;
}

}  // namespace comply
