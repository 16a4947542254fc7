#pragma once

// Enumeration of condition instances that use a new input n in exactly one slot
// and previously placed inputs in the other slots (repetition allowed).

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "conditions.hpp"

namespace comply {

enum class AvoidanceMode { Unrestricted, MaxAc, OrderPreserving };

inline const char* mode_name(AvoidanceMode m) {
  switch (m) {
    case AvoidanceMode::Unrestricted: return "un";
    case AvoidanceMode::MaxAc: return "max";
    case AvoidanceMode::OrderPreserving: return "op";
  }
  return "?";
}

inline AvoidanceMode parse_mode(const std::string& s) {
  if (s == "un" || s == "unrestricted") return AvoidanceMode::Unrestricted;
  if (s == "max" || s == "maxac") return AvoidanceMode::MaxAc;
  if (s == "op" || s == "order") return AvoidanceMode::OrderPreserving;
  throw InvalidParams("unknown mode '" + s + "'");
}

// Inputs 0..size-1 mapped to images.
struct PrefixHistory {
  std::span<const Int> images;

  std::size_t size() const { return images.size(); }
  Int input(std::size_t i) const { return static_cast<Int>(i); }
  Int image(std::size_t i) const { return images[i]; }
  std::ptrdiff_t find(Int v) const {
    return v >= 0 && v < static_cast<Int>(images.size()) ? static_cast<std::ptrdiff_t>(v) : -1;
  }
};

// A set of values, each its own image. position[v] is the index of v or -1.
struct SetHistory {
  std::span<const Int> elements;
  std::span<const std::int32_t> position;

  std::size_t size() const { return elements.size(); }
  Int input(std::size_t i) const { return elements[i]; }
  Int image(std::size_t i) const { return elements[i]; }
  std::ptrdiff_t find(Int v) const {
    if (v < 0 || v >= static_cast<Int>(position.size())) return -1;
    auto p = position[static_cast<std::size_t>(v)];
    return p >= 0 && static_cast<std::size_t>(p) < elements.size() ? p : -1;
  }
};

struct Instance {
  std::array<std::ptrdiff_t, FormFamily::kMaxArity> slots{};  // history index, -1 at the new slot
  std::size_t arity = 0;
  std::size_t new_slot = 0;
  std::optional<Int> image;  // nullopt: every image value completes the instance
};

struct ImageSet {
  bool any = false;
  std::vector<Int> values;
};

namespace detail {

inline void add_image(ImageSet& s, Int v) {
  if (std::find(s.values.begin(), s.values.end(), v) == s.values.end()) s.values.push_back(v);
}

// Image values y_j for which the system vanishes on ys (ys[j] unknown).
inline bool system_image(const FormSystem& sys, std::span<const Int> ys, std::size_t j, std::optional<Int>& v) {
  v.reset();
  for (auto& f : sys) {
    Int rest = f.constant;
    for (std::size_t s = 0; s < ys.size(); ++s)
      if (s != j) rest += f.coeffs[s] * ys[s];
    Int a = f.coeffs[j];
    if (a == 0) {
      if (rest != 0) return false;
      continue;
    }
    if (rest % a != 0) return false;
    Int w = -rest / a;
    if (v && *v != w) return false;
    v = w;
  }
  return true;
}

}  // namespace detail

// Image values for slot j that make the atom hold, given all x-coordinates and
// the y-coordinates of the other slots.
inline ImageSet solve_new_image(const FormFamily& fam, std::span<const Int> xs, std::span<const Int> ys,
                                std::size_t j) {
  ImageSet out;
  std::array<Int, FormFamily::kMaxArity> y{};
  std::copy(ys.begin(), ys.end(), y.begin());
  const std::span<const Int> yv(y.data(), ys.size());
  auto check = [&](Int v) {
    y[j] = v;
    if (fam.holds(xs, yv)) detail::add_image(out, v);
  };
  if (fam.is_finite()) {
    for (auto& sys : fam.members(0)) {
      bool vanish = true;
      for (auto& f : sys) vanish = vanish && f.evaluate(xs) == 0;
      if (!vanish) continue;
      std::optional<Int> v;
      if (!detail::system_image(sys, ys, j, v)) continue;
      if (!v) {
        if (!fam.member_trivial(sys, xs, xs)) out.any = true;
        continue;
      }
      y[j] = *v;
      if (!fam.member_trivial(sys, xs, yv)) detail::add_image(out, *v);
    }
    return out;
  }
  switch (fam.builtin().kind) {
    case BuiltinKind::diagonal: {
      Int i = xs[1] - xs[0];
      if (i > 0) check(j == 1 ? ys[0] + i : ys[1] - i);
      break;
    }
    case BuiltinKind::line:
    case BuiltinKind::parallel: {
      std::size_t p, q, r;
      if (fam.builtin().kind == BuiltinKind::line) {
        p = j == 0 ? 1 : 0;
        q = p;
        r = 3 - j - p;
      } else {
        p = j ^ 1;
        q = j < 2 ? 2 : 0;
        r = q + 1;
      }
      Int dx = xs[r] - xs[q], dy = ys[r] - ys[q];
      if (dx == 0) {
        if (xs[j] == xs[p]) out.any = true;
        break;
      }
      Int num = (xs[j] - xs[p]) * dy;
      if (num % dx == 0) check(ys[p] + num / dx);
      break;
    }
    default: break;
  }
  return out;
}

class InstancePlan {
 public:
  explicit InstancePlan(const ConditionExpr& cond) : arity_(cond.arity()) {
    for (auto& atoms : cond.dnf()) {
      Clause cl;
      cl.atoms = atoms;
      bool dead = false, finite = true;
      for (auto* a : atoms) {
        if (a->is_builtin() && a->builtin().kind == BuiltinKind::empty) dead = true;
        finite = finite && a->is_finite();
      }
      if (dead) continue;
      if (finite) {
        cl.kind = Clause::linear;
        cl.options.push_back({});
        for (auto* a : atoms) {
          std::vector<LinearOption> next;
          for (auto& opt : cl.options)
            for (auto& sys : a->members(0)) {
              auto o = opt;
              o.forms.insert(o.forms.end(), sys.begin(), sys.end());
              o.parts.emplace_back(a, sys);
              next.push_back(std::move(o));
            }
          cl.options = std::move(next);
        }
      } else if (atoms.size() == 1) {
        auto k = atoms[0]->builtin().kind;
        cl.kind = k == BuiltinKind::diagonal ? Clause::diagonal
                  : k == BuiltinKind::line   ? Clause::line
                                             : Clause::parallel;
      } else {
        cl.kind = Clause::brute;
      }
      clauses_.push_back(std::move(cl));
    }
  }

  std::size_t arity() const { return arity_; }

  // Calls fn(const Instance&) for instances; fn returns true to stop.
  // Returns true when stopped early.
  template <class H, class Fn>
  bool for_each(const H& h, Int n, Fn&& fn) const {
    for (auto& cl : clauses_) {
      bool stop = false;
      switch (cl.kind) {
        case Clause::linear:
          for (auto& opt : cl.options)
            for (std::size_t j = 0; j < arity_ && !stop; ++j) stop = linear(opt, h, n, j, fn);
          break;
        case Clause::diagonal: stop = diagonal_instances(h, n, fn); break;
        case Clause::line: stop = line_instances(h, n, fn); break;
        case Clause::parallel: stop = parallel_instances(h, n, fn); break;
        case Clause::brute: stop = brute(cl, h, n, fn); break;
      }
      if (stop) return true;
    }
    return false;
  }

 private:
  struct LinearOption {
    FormSystem forms;
    std::vector<std::pair<const FormFamily*, FormSystem>> parts;
  };
  struct Clause {
    enum Kind { linear, diagonal, line, parallel, brute } kind = linear;
    std::vector<LinearOption> options;
    std::vector<const FormFamily*> atoms;
  };
  struct State {
    std::array<Int, FormFamily::kMaxArity> val{};
    std::array<std::ptrdiff_t, FormFamily::kMaxArity> idx{};
    std::uint32_t assigned = 0;
  };

  template <class H, class Fn>
  bool linear(const LinearOption& opt, const H& h, Int n, std::size_t j, Fn& fn) const {
    State st;
    st.val[j] = n;
    st.idx[j] = -1;
    st.assigned = 1u << j;
    return linear_rec(opt, h, j, st, fn);
  }

  template <class H, class Fn>
  bool linear_rec(const LinearOption& opt, const H& h, std::size_t j, State st, Fn& fn) const {
    for (bool progress = true; progress;) {
      progress = false;
      for (auto& f : opt.forms) {
        Int sum = f.constant;
        int free = 0;
        std::size_t slot = 0;
        for (std::size_t s = 0; s < arity_; ++s) {
          if (f.coeffs[s] == 0) continue;
          if (st.assigned >> s & 1u) {
            sum += f.coeffs[s] * st.val[s];
          } else {
            ++free;
            slot = s;
          }
        }
        if (free == 0 && sum != 0) return false;
        if (free != 1) continue;
        Int a = f.coeffs[slot];
        if (sum % a != 0) return false;
        Int v = -sum / a;
        auto i = h.find(v);
        if (i < 0) return false;
        st.val[slot] = v;
        st.idx[slot] = i;
        st.assigned |= 1u << slot;
        progress = true;
      }
    }
    for (std::size_t s = 0; s < arity_; ++s) {
      if (st.assigned >> s & 1u) continue;
      for (std::size_t i = 0; i < h.size(); ++i) {
        State next = st;
        next.val[s] = h.input(i);
        next.idx[s] = static_cast<std::ptrdiff_t>(i);
        next.assigned |= 1u << s;
        if (linear_rec(opt, h, j, next, fn)) return true;
      }
      return false;
    }
    const std::span<const Int> xs(st.val.data(), arity_);
    for (auto& [fam, sys] : opt.parts)
      if (fam->member_trivial(sys, xs, xs)) return false;
    std::array<Int, FormFamily::kMaxArity> ys{};
    for (std::size_t s = 0; s < arity_; ++s)
      if (s != j) ys[s] = h.image(static_cast<std::size_t>(st.idx[s]));
    Instance ins;
    ins.arity = arity_;
    ins.new_slot = j;
    ins.slots = st.idx;
    if (!detail::system_image(opt.forms, std::span<const Int>(ys.data(), arity_), j, ins.image)) return false;
    return fn(static_cast<const Instance&>(ins));
  }

  template <class Fn>
  bool emit(std::initializer_list<std::ptrdiff_t> slots, Int v, Fn& fn) const {
    Instance ins;
    ins.arity = slots.size();
    std::size_t s = 0;
    for (auto i : slots) {
      if (i < 0) ins.new_slot = s;
      ins.slots[s++] = i;
    }
    ins.image = v;
    return fn(static_cast<const Instance&>(ins));
  }

  template <class H, class Fn>
  bool diagonal_instances(const H& h, Int n, Fn& fn) const {
    for (std::size_t a = 0; a < h.size(); ++a) {
      auto ia = static_cast<std::ptrdiff_t>(a);
      Int d = n - h.input(a);
      if (d > 0 && emit({ia, -1}, h.image(a) + d, fn)) return true;
      if (d < 0 && emit({-1, ia}, h.image(a) + d, fn)) return true;
    }
    return false;
  }

  template <class H, class Fn>
  bool line_instances(const H& h, Int n, Fn& fn) const {
    for (std::size_t a = 0; a < h.size(); ++a)
      for (std::size_t b = a + 1; b < h.size(); ++b) {
        Int ax = h.input(a), bx = h.input(b);
        if (ax == bx || ax == n || bx == n) continue;
        Int num = (n - ax) * (h.image(b) - h.image(a));
        if (num % (bx - ax) != 0) continue;
        Int v = h.image(a) + num / (bx - ax);
        if (emit({static_cast<std::ptrdiff_t>(a), static_cast<std::ptrdiff_t>(b), -1}, v, fn)) return true;
      }
    return false;
  }

  template <class H, class Fn>
  bool parallel_instances(const H& h, Int n, Fn& fn) const {
    const std::size_t m = h.size();
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b)
        for (std::size_t c = b + 1; c < m; ++c) {
          const std::size_t t[3] = {a, b, c};
          for (int r = 0; r < 3; ++r) {
            // new point paired with t[r], parallel to the segment through the other two
            std::size_t p = t[r], q = t[(r + 1) % 3], s = t[(r + 2) % 3];
            Int px = h.input(p), qx = h.input(q), sx = h.input(s);
            Int py = h.image(p), qy = h.image(q), sy = h.image(s);
            if (sx == qx || px == n) continue;
            if (detail::cross(qx - px, qy - py, sx - px, sy - py) == 0) continue;
            Int num = (n - px) * (sy - qy);
            if (num % (sx - qx) != 0) continue;
            Int v = py + num / (sx - qx);
            if (emit({-1, static_cast<std::ptrdiff_t>(p), static_cast<std::ptrdiff_t>(q),
                      static_cast<std::ptrdiff_t>(s)},
                     v, fn))
              return true;
          }
        }
    return false;
  }

  template <class H, class Fn>
  bool brute(const Clause& cl, const H& h, Int n, Fn& fn) const {
    const std::size_t k = arity_;
    if (h.size() == 0 && k > 1) return false;
    for (std::size_t j = 0; j < k; ++j) {
      std::array<std::size_t, FormFamily::kMaxArity> pick{};
      while (true) {
        std::array<Int, FormFamily::kMaxArity> xs{}, ys{};
        Instance ins;
        ins.arity = k;
        ins.new_slot = j;
        for (std::size_t s = 0; s < k; ++s) {
          if (s == j) {
            xs[s] = n;
            ins.slots[s] = -1;
          } else {
            xs[s] = h.input(pick[s]);
            ys[s] = h.image(pick[s]);
            ins.slots[s] = static_cast<std::ptrdiff_t>(pick[s]);
          }
        }
        ImageSet acc{true, {}};
        for (auto* a : cl.atoms) {
          auto s = solve_new_image(*a, std::span<const Int>(xs.data(), k), std::span<const Int>(ys.data(), k), j);
          if (acc.any) {
            acc = std::move(s);
          } else if (!s.any) {
            std::vector<Int> keep;
            for (auto v : acc.values)
              if (std::find(s.values.begin(), s.values.end(), v) != s.values.end()) keep.push_back(v);
            acc.values = std::move(keep);
          }
          if (!acc.any && acc.values.empty()) break;
        }
        if (acc.any) {
          ins.image.reset();
          if (fn(static_cast<const Instance&>(ins))) return true;
        } else {
          for (auto v : acc.values) {
            ins.image = v;
            if (fn(static_cast<const Instance&>(ins))) return true;
          }
        }
        std::size_t s = 0;
        for (; s < k; ++s) {
          if (s == j) continue;
          if (++pick[s] < h.size()) break;
          pick[s] = 0;
        }
        if (s == k) break;
      }
    }
    return false;
  }

  std::size_t arity_;
  std::vector<Clause> clauses_;
};

// Whether the avoidance mode admits an instance whose new slot gets (n, v).
template <class H>
bool mode_allows(AvoidanceMode m, const H& h, const Instance& ins, Int n, Int v) {
  if (m == AvoidanceMode::Unrestricted) return true;
  auto in = [&](std::size_t s) { return ins.slots[s] < 0 ? n : h.input(static_cast<std::size_t>(ins.slots[s])); };
  auto im = [&](std::size_t s) { return ins.slots[s] < 0 ? v : h.image(static_cast<std::size_t>(ins.slots[s])); };
  if (m == AvoidanceMode::MaxAc) {
    for (std::size_t s = 0; s < ins.arity; ++s)
      if (ins.slots[s] >= 0 && im(s) >= v) return false;
    return true;
  }
  for (std::size_t a = 0; a < ins.arity; ++a)
    for (std::size_t b = 0; b < ins.arity; ++b)
      if (in(a) < in(b) && !(im(a) < im(b))) return false;
  return true;
}

// Images v in [0, cap] that complete an admissible instance at input n, given
// the prefix pi(0..n-1). Throws when an instance forbids every value.
inline std::vector<Int> forbidden_values(const ConditionExpr& cond, AvoidanceMode mode,
                                         std::span<const Int> prefix, Int cap) {
  const Int n = static_cast<Int>(prefix.size());
  InstancePlan plan(cond);
  PrefixHistory h{prefix};
  std::vector<char> hit(static_cast<std::size_t>(cap + 1), 0);
  plan.for_each(h, n, [&](const Instance& ins) {
    if (!ins.image) throw CandidateSearchExhausted(n, cap);
    Int v = *ins.image;
    if (v >= 0 && v <= cap && mode_allows(mode, h, ins, n, v)) hit[static_cast<std::size_t>(v)] = 1;
    return false;
  });
  std::vector<Int> out;
  for (Int v = 0; v <= cap; ++v)
    if (hit[static_cast<std::size_t>(v)]) out.push_back(v);
  return out;
}

}  // namespace comply
