#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"

namespace comply {

// Linear polynomial f(x_1..x_k) = constant + sum coeffs[i] * x_{i+1}.
struct LinearForm {
  std::vector<Int> coeffs;
  Int constant = 0;

  LinearForm() = default;
  LinearForm(std::vector<Int> c, Int c0 = 0) : coeffs(std::move(c)), constant(c0) {
    if (coeffs.empty()) throw InvalidParams("linear form needs at least one variable");
  }

  std::size_t arity() const { return coeffs.size(); }

  Int evaluate(std::span<const Int> t) const {
    if (t.size() != coeffs.size())
      throw ArityError("tuple length " + std::to_string(t.size()) + " != arity " +
                       std::to_string(coeffs.size()));
    Int s = constant;
    for (std::size_t i = 0; i < t.size(); ++i) s += coeffs[i] * t[i];
    return s;
  }

  bool operator==(const LinearForm&) const = default;
};

inline bool is_translation_invariant(const LinearForm& f) {
  return f.constant == 0 &&
         std::accumulate(f.coeffs.begin(), f.coeffs.end(), Int{0}) == 0;
}

namespace detail {

// Group indices of equal points; returns a label per index.
inline std::vector<std::size_t> point_groups(std::span<const Int> xs, std::span<const Int> ys) {
  std::vector<std::size_t> g(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    g[i] = i;
    for (std::size_t j = 0; j < i; ++j)
      if (xs[j] == xs[i] && ys[j] == ys[i]) {
        g[i] = g[j];
        break;
      }
  }
  return g;
}

inline bool form_trivial_on_groups(const LinearForm& f, const std::vector<std::size_t>& g) {
  if (f.constant != 0) return false;
  std::vector<Int> sums(g.size(), 0);
  for (std::size_t i = 0; i < g.size(); ++i) sums[g[i]] += f.coeffs[i];
  return std::all_of(sums.begin(), sums.end(), [](Int s) { return s == 0; });
}

inline bool all_points_equal(std::span<const Int> xs, std::span<const Int> ys) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (xs[i] != xs[0] || ys[i] != ys[0]) return false;
  return true;
}

inline bool points_distinct(std::span<const Int> xs, std::span<const Int> ys) {
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (xs[i] == xs[j] && ys[i] == ys[j]) return false;
  return true;
}

inline Int cross(Int ax, Int ay, Int bx, Int by) { return ax * by - ay * bx; }

inline Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace detail

// A tuple is a trivial solution when it lies in the zero set of f restricted to
// the diagonal of some nontrivial partition of its positions.
inline bool is_trivial_solution(const LinearForm& f, std::span<const Int> t) {
  if (t.size() != f.arity())
    throw ArityError("tuple length " + std::to_string(t.size()) + " != arity " +
                     std::to_string(f.arity()));
  return detail::form_trivial_on_groups(f, detail::point_groups(t, t));
}

enum class BuiltinKind { ap, mean, sidon, ky_xz, diagonal, line, parallel, empty };

struct Builtin {
  BuiltinKind kind;
  Int param = 0;  // k for ap/mean/sidon/ky_xz
};

inline std::string builtin_name(BuiltinKind k) {
  switch (k) {
    case BuiltinKind::ap: return "ap";
    case BuiltinKind::mean: return "mean";
    case BuiltinKind::sidon: return "sidon";
    case BuiltinKind::ky_xz: return "ky_xz";
    case BuiltinKind::diagonal: return "diagonal";
    case BuiltinKind::line: return "line";
    case BuiltinKind::parallel: return "parallel";
    case BuiltinKind::empty: return "empty";
  }
  return "?";
}

// One member of a family is a system of forms that must all vanish.
using FormSystem = std::vector<LinearForm>;

// A possibly infinite family of linear forms (or systems) of a common arity.
// An atom holds on a tuple of points when some member vanishes on both the
// x-coordinates and the y-coordinates and the points are not a trivial solution.
class FormFamily {
 public:
  explicit FormFamily(std::vector<LinearForm> forms) : repr_(std::move(forms)) {
    auto& fs = std::get<0>(repr_);
    if (fs.empty()) throw InvalidParams("explicit family needs at least one form");
    arity_ = fs[0].arity();
    for (auto& f : fs)
      if (f.arity() != arity_) throw ArityError("forms in a family must share arity");
  }

  explicit FormFamily(Builtin b) : repr_(b) {
    switch (b.kind) {
      case BuiltinKind::ap:
        if (b.param < 2) throw InvalidParams("ap(k) needs k >= 2");
        arity_ = static_cast<std::size_t>(b.param);
        break;
      case BuiltinKind::mean:
        if (b.param < 2) throw InvalidParams("mean(k) needs k >= 2");
        arity_ = static_cast<std::size_t>(b.param);
        break;
      case BuiltinKind::sidon:
        if (b.param < 2) throw InvalidParams("sidon(k) needs k >= 2");
        arity_ = static_cast<std::size_t>(2 * b.param);
        break;
      case BuiltinKind::ky_xz:
        if (b.param < 1) throw InvalidParams("ky_xz(k) needs k >= 1");
        arity_ = 3;
        break;
      case BuiltinKind::diagonal:
      case BuiltinKind::empty: arity_ = 2; break;
      case BuiltinKind::line: arity_ = 3; break;
      case BuiltinKind::parallel: arity_ = 4; break;
    }
    if (arity_ > kMaxArity) throw InvalidParams("arity above " + std::to_string(kMaxArity));
  }

  static constexpr std::size_t kMaxArity = 16;

  std::size_t arity() const { return arity_; }
  bool is_builtin() const { return repr_.index() == 1; }
  const Builtin& builtin() const { return std::get<1>(repr_); }
  const std::vector<LinearForm>& explicit_forms() const { return std::get<0>(repr_); }

  // Families whose member list does not depend on the coordinate bound.
  bool is_finite() const {
    if (!is_builtin()) return true;
    auto k = builtin().kind;
    return k != BuiltinKind::diagonal && k != BuiltinKind::line && k != BuiltinKind::parallel;
  }

  // Members relevant for coordinates of absolute value at most bound.
  std::vector<FormSystem> members(Int bound) const {
    std::vector<FormSystem> out;
    if (!is_builtin()) {
      for (auto& f : explicit_forms()) out.push_back({f});
      return out;
    }
    const Int k = builtin().param;
    switch (builtin().kind) {
      case BuiltinKind::ap: {
        FormSystem sys;
        for (Int i = 0; i + 2 < k; ++i) {
          std::vector<Int> c(k, 0);
          c[i] = 1;
          c[i + 1] = -2;
          c[i + 2] = 1;
          sys.emplace_back(std::move(c));
        }
        out.push_back(std::move(sys));
        break;
      }
      case BuiltinKind::mean: {
        std::vector<Int> c(k, 1);
        c[k - 1] = -(k - 1);
        out.push_back({LinearForm(std::move(c))});
        break;
      }
      case BuiltinKind::sidon: {
        std::vector<Int> c(2 * k, 0);
        c[0] = 1;
        for (Int i = 1; i <= k; ++i) c[i] = -1;
        for (Int i = k + 1; i < 2 * k; ++i) c[i] = 1;
        out.push_back({LinearForm(std::move(c))});
        break;
      }
      case BuiltinKind::ky_xz: out.push_back({LinearForm({-1, k, -1})}); break;
      case BuiltinKind::diagonal:
        for (Int i = 0; i <= bound; ++i) out.push_back({LinearForm({-1, 1}, -i)});
        break;
      case BuiltinKind::line:
        for (auto [a, b] : coprime_directions(bound))
          out.push_back({LinearForm({a, b, -(a + b)})});
        break;
      case BuiltinKind::parallel:
        for (auto [a, b] : coprime_directions(bound))
          out.push_back({LinearForm({-a, a, b, -b})});
        break;
      case BuiltinKind::empty: break;
    }
    return out;
  }

  // Triviality of a member on a tuple of points.
  bool member_trivial(const FormSystem& sys, std::span<const Int> xs, std::span<const Int> ys) const {
    if (is_builtin()) {
      switch (builtin().kind) {
        case BuiltinKind::ap:
        case BuiltinKind::mean: return detail::all_points_equal(xs, ys);
        case BuiltinKind::line:
        case BuiltinKind::parallel: return !nondegenerate_geometry(xs, ys);
        default: break;
      }
    }
    auto g = detail::point_groups(xs, ys);
    return std::all_of(sys.begin(), sys.end(),
                       [&](const LinearForm& f) { return detail::form_trivial_on_groups(f, g); });
  }

  // Joint evaluation on points (xs[i], ys[i]).
  bool holds(std::span<const Int> xs, std::span<const Int> ys) const {
    if (xs.size() != arity_ || ys.size() != arity_)
      throw ArityError("tuple length " + std::to_string(xs.size()) + " != arity " +
                       std::to_string(arity_));
    if (!is_builtin()) {
      auto g = detail::point_groups(xs, ys);
      for (auto& f : explicit_forms())
        if (f.evaluate(xs) == 0 && f.evaluate(ys) == 0 && !detail::form_trivial_on_groups(f, g))
          return true;
      return false;
    }
    const Int k = builtin().param;
    switch (builtin().kind) {
      case BuiltinKind::ap:
        for (Int i = 0; i + 2 < k; ++i)
          if (xs[i] + xs[i + 2] != 2 * xs[i + 1] || ys[i] + ys[i + 2] != 2 * ys[i + 1])
            return false;
        return !detail::all_points_equal(xs, ys);
      case BuiltinKind::diagonal:
        return xs[1] > xs[0] && xs[1] - xs[0] == ys[1] - ys[0];
      case BuiltinKind::line:
        return nondegenerate_geometry(xs, ys) &&
               detail::cross(xs[1] - xs[0], ys[1] - ys[0], xs[2] - xs[0], ys[2] - ys[0]) == 0;
      case BuiltinKind::parallel:
        return nondegenerate_geometry(xs, ys) &&
               detail::cross(xs[1] - xs[0], ys[1] - ys[0], xs[3] - xs[2], ys[3] - ys[2]) == 0;
      case BuiltinKind::empty: return false;
      default: {
        auto sys = members(0).front();
        for (auto& f : sys)
          if (f.evaluate(xs) != 0 || f.evaluate(ys) != 0) return false;
        return !member_trivial(sys, xs, ys);
      }
    }
  }

  bool holds(std::span<const Int> t) const { return holds(t, t); }

  std::string to_string() const;

 private:
  static std::vector<std::pair<Int, Int>> coprime_directions(Int bound) {
    std::vector<std::pair<Int, Int>> out;
    out.emplace_back(0, 1);
    for (Int a = 1; a <= bound; ++a)
      for (Int b = -bound; b <= bound; ++b)
        if (std::gcd(a, b) == 1) out.emplace_back(a, b);
    return out;
  }

  // line: three distinct points. parallel: four distinct points and the
  // segment lines P1P2, P3P4 are distinct.
  bool nondegenerate_geometry(std::span<const Int> xs, std::span<const Int> ys) const {
    if (!detail::points_distinct(xs, ys)) return false;
    if (builtin().kind == BuiltinKind::parallel)
      return detail::cross(xs[1] - xs[0], ys[1] - ys[0], xs[2] - xs[0], ys[2] - ys[0]) != 0 ||
             detail::cross(xs[1] - xs[0], ys[1] - ys[0], xs[3] - xs[0], ys[3] - ys[0]) != 0;
    return true;
  }

  std::variant<std::vector<LinearForm>, Builtin> repr_;
  std::size_t arity_ = 0;
};

// Boolean combination of atoms sharing one positional arity.
class ConditionExpr {
 public:
  enum class Op { atom, all_of, any_of };

  static ConditionExpr atom(FormFamily f) {
    auto n = std::make_shared<Node>();
    n->arity = f.arity();
    n->family = std::make_shared<FormFamily>(std::move(f));
    return ConditionExpr(std::move(n));
  }
  static ConditionExpr all_of(std::vector<ConditionExpr> cs) { return combine(Op::all_of, std::move(cs)); }
  static ConditionExpr any_of(std::vector<ConditionExpr> cs) { return combine(Op::any_of, std::move(cs)); }

  Op op() const { return node_->op; }
  const FormFamily& family() const { return *node_->family; }
  const std::vector<ConditionExpr>& children() const { return node_->children; }
  std::size_t arity() const { return node_->arity; }

  bool holds(std::span<const Int> xs, std::span<const Int> ys) const {
    switch (op()) {
      case Op::atom: return family().holds(xs, ys);
      case Op::all_of:
        for (auto& c : children())
          if (!c.holds(xs, ys)) return false;
        return true;
      case Op::any_of:
        for (auto& c : children())
          if (c.holds(xs, ys)) return true;
        return false;
    }
    return false;
  }
  bool holds(std::span<const Int> t) const { return holds(t, t); }

  // Disjunctive normal form: each clause is a list of atoms.
  std::vector<std::vector<const FormFamily*>> dnf() const {
    switch (op()) {
      case Op::atom: return {{node_->family.get()}};
      case Op::any_of: {
        std::vector<std::vector<const FormFamily*>> out;
        for (auto& c : children())
          for (auto& cl : c.dnf()) out.push_back(std::move(cl));
        return out;
      }
      case Op::all_of: {
        std::vector<std::vector<const FormFamily*>> acc{{}};
        for (auto& c : children()) {
          std::vector<std::vector<const FormFamily*>> next;
          for (auto& a : acc)
            for (auto& b : c.dnf()) {
              auto m = a;
              m.insert(m.end(), b.begin(), b.end());
              next.push_back(std::move(m));
            }
          acc = std::move(next);
        }
        return acc;
      }
    }
    return {};
  }

  std::string to_string() const;

  bool operator==(const ConditionExpr& o) const { return to_string() == o.to_string(); }

 private:
  struct Node {
    Op op = Op::atom;
    std::shared_ptr<const FormFamily> family;
    std::vector<ConditionExpr> children;
    std::size_t arity = 0;
  };

  explicit ConditionExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static ConditionExpr combine(Op op, std::vector<ConditionExpr> cs) {
    if (cs.empty()) throw InvalidParams("empty combination");
    if (cs.size() == 1) return cs.front();
    auto n = std::make_shared<Node>();
    n->op = op;
    n->arity = cs.front().arity();
    for (auto& c : cs) {
      if (c.arity() != n->arity) throw ArityError("mixed arities across atoms");
      if (c.op() == op)
        n->children.insert(n->children.end(), c.children().begin(), c.children().end());
      else
        n->children.push_back(c);
    }
    return ConditionExpr(std::move(n));
  }

  std::shared_ptr<const Node> node_;
};

inline ConditionExpr builtin(BuiltinKind kind, Int k = 0) {
  return ConditionExpr::atom(FormFamily(Builtin{kind, k}));
}
inline ConditionExpr ap(Int k) { return builtin(BuiltinKind::ap, k); }
inline ConditionExpr mean(Int k) { return builtin(BuiltinKind::mean, k); }
inline ConditionExpr sidon(Int k = 2) { return builtin(BuiltinKind::sidon, k); }
inline ConditionExpr ky_xz(Int k) { return builtin(BuiltinKind::ky_xz, k); }
inline ConditionExpr diagonal() { return builtin(BuiltinKind::diagonal); }
inline ConditionExpr line() { return builtin(BuiltinKind::line); }
inline ConditionExpr parallel() { return builtin(BuiltinKind::parallel); }
inline ConditionExpr empty_condition() { return builtin(BuiltinKind::empty); }
inline ConditionExpr equation(LinearForm f) { return ConditionExpr::atom(FormFamily({std::move(f)})); }

// Translation invariance of a whole condition.
inline bool family_coefficients_balanced(const ConditionExpr& c) {
  for (auto& clause : c.dnf())
    for (auto* fam : clause) {
      // Infinite families range their constant over a whole family, so only
      // the coefficient sum is checked.
      for (auto& sys : fam->members(1))
        for (auto& f : sys) {
          if (std::accumulate(f.coeffs.begin(), f.coeffs.end(), Int{0}) != 0) return false;
          if (fam->is_finite() && f.constant != 0) return false;
        }
    }
  return true;
}

// Printing.

namespace detail {

inline void append_side(std::string& s, const std::vector<std::pair<Int, std::size_t>>& terms, Int constant) {
  bool first = true;
  for (auto [c, i] : terms) {
    if (!first) s += " + ";
    first = false;
    if (c != 1) s += std::to_string(c) + "*";
    s += "x" + std::to_string(i + 1);
  }
  if (constant != 0) {
    if (!first) s += " + ";
    s += std::to_string(constant);
    first = false;
  }
  if (first) s += "0";
}

}  // namespace detail

inline std::string form_to_string(const LinearForm& f) {
  std::vector<std::pair<Int, std::size_t>> lhs, rhs;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    if (f.coeffs[i] > 0) lhs.emplace_back(f.coeffs[i], i);
    if (f.coeffs[i] < 0) rhs.emplace_back(-f.coeffs[i], i);
  }
  std::string s;
  detail::append_side(s, lhs, f.constant > 0 ? f.constant : 0);
  s += " = ";
  detail::append_side(s, rhs, f.constant < 0 ? -f.constant : 0);
  return s;
}

inline std::string FormFamily::to_string() const {
  if (!is_builtin()) {
    std::string s;
    for (std::size_t i = 0; i < explicit_forms().size(); ++i) {
      if (i) s += " OR ";
      s += form_to_string(explicit_forms()[i]);
    }
    return s;
  }
  auto k = builtin().kind;
  std::string s = builtin_name(k) + "(";
  if (k == BuiltinKind::ap || k == BuiltinKind::mean || k == BuiltinKind::sidon || k == BuiltinKind::ky_xz)
    s += std::to_string(builtin().param);
  return s + ")";
}

inline std::string ConditionExpr::to_string() const {
  switch (op()) {
    case Op::atom: {
      auto s = family().to_string();
      if (!family().is_builtin() && family().explicit_forms().size() > 1) return "(" + s + ")";
      return s;
    }
    case Op::all_of: {
      std::string s;
      for (std::size_t i = 0; i < children().size(); ++i) {
        if (i) s += " AND ";
        auto& c = children()[i];
        s += c.op() == Op::any_of ? "(" + c.to_string() + ")" : c.to_string();
      }
      return s;
    }
    case Op::any_of: {
      std::string s;
      for (std::size_t i = 0; i < children().size(); ++i) {
        if (i) s += " OR ";
        s += children()[i].to_string();
      }
      return s;
    }
  }
  return {};
}

}  // namespace comply
