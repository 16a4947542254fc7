#pragma once

// Text syntax for conditions:
//   cond     := clause { ("AND" | "OR") clause }      AND binds tighter
//   clause   := "(" cond ")" | builtin | equation
//   builtin  := name "(" [int] ")"
//   equation := linexpr "=" linexpr
//   linexpr  := term { ("+" | "-") term }
//   term     := [int ["*"]] var | int
//   var      := "x" int | "x" | "y" | "z" | "w"

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "conditions.hpp"

namespace comply {

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  ConditionExpr parse() {
    auto tree = parse_or();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected input");
    std::size_t arity = 0;
    for (auto& e : equations_) arity = std::max(arity, e.max_var);
    std::optional<std::size_t> fixed;
    for (auto& b : builtins_) {
      if (fixed && *fixed != b.arity) throw ArityError("mixed arities across atoms");
      fixed = b.arity;
    }
    if (fixed) {
      if (arity > *fixed) throw ArityError("equation uses a variable beyond arity " + std::to_string(*fixed));
      arity = *fixed;
    }
    return build(tree, arity);
  }

 private:
  struct Eq {
    std::map<std::size_t, Int> coeffs;  // 0-based variable -> coefficient
    Int constant = 0;
    std::size_t max_var = 0;
  };
  struct Bi {
    Builtin b;
    std::size_t arity;
  };
  struct Tree {
    enum Kind { eq, bi, all, any } kind;
    std::size_t index = 0;
    std::vector<Tree> kids;
  };

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool peek_char(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  void expect(char c) {
    if (!peek_char(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string peek_ident() {
    skip_ws();
    std::size_t p = pos_;
    if (p >= src_.size() || !(std::isalpha(static_cast<unsigned char>(src_[p])) || src_[p] == '_')) return {};
    while (p < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[p])) || src_[p] == '_')) ++p;
    return std::string(src_.substr(pos_, p - pos_));
  }

  bool accept_keyword(const char* upper) {
    auto id = peek_ident();
    std::string u = id;
    for (auto& ch : u) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (!id.empty() && u == upper) {
      pos_ += id.size();
      return true;
    }
    return false;
  }

  Int parse_int() {
    skip_ws();
    std::size_t p = pos_;
    while (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) ++p;
    if (p == pos_) fail("expected integer");
    Int v = 0;
    try {
      v = std::stoll(std::string(src_.substr(pos_, p - pos_)));
    } catch (const std::out_of_range&) {
      fail("integer out of range");
    }
    pos_ = p;
    return v;
  }

  static std::optional<std::size_t> var_index(const std::string& id) {
    if (id == "x") return 0;
    if (id == "y") return 1;
    if (id == "z") return 2;
    if (id == "w") return 3;
    if (id.size() > 1 && id[0] == 'x' &&
        std::all_of(id.begin() + 1, id.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      auto i = std::stoull(id.substr(1));
      if (i == 0) return std::nullopt;
      return i - 1;
    }
    return std::nullopt;
  }

  Tree parse_or() {
    Tree t = parse_and();
    if (!peek_keyword("OR")) return t;
    Tree any{Tree::any, 0, {std::move(t)}};
    while (accept_keyword("OR")) any.kids.push_back(parse_and());
    return any;
  }

  Tree parse_and() {
    Tree t = parse_clause();
    if (!peek_keyword("AND")) return t;
    Tree all{Tree::all, 0, {std::move(t)}};
    while (accept_keyword("AND")) all.kids.push_back(parse_clause());
    return all;
  }

  bool peek_keyword(const char* upper) {
    auto save = pos_;
    bool ok = accept_keyword(upper);
    pos_ = save;
    return ok;
  }

  Tree parse_clause() {
    if (peek_char('(')) {
      ++pos_;
      Tree t = parse_or();
      expect(')');
      return t;
    }
    auto id = peek_ident();
    if (!id.empty() && !var_index(id)) return parse_builtin(id);
    return parse_equation();
  }

  Tree parse_builtin(const std::string& id) {
    static const std::map<std::string, BuiltinKind> names = {
        {"ap", BuiltinKind::ap},       {"mean", BuiltinKind::mean},       {"sidon", BuiltinKind::sidon},
        {"ky_xz", BuiltinKind::ky_xz}, {"diagonal", BuiltinKind::diagonal}, {"line", BuiltinKind::line},
        {"parallel", BuiltinKind::parallel}, {"empty", BuiltinKind::empty}};
    auto it = names.find(id);
    if (it == names.end()) fail("unknown condition '" + id + "'");
    pos_ += id.size();
    expect('(');
    Int k = 0;
    bool has_param = !peek_char(')');
    if (has_param) k = parse_int();
    expect(')');
    auto kind = it->second;
    bool wants = kind == BuiltinKind::ap || kind == BuiltinKind::mean || kind == BuiltinKind::sidon ||
                 kind == BuiltinKind::ky_xz;
    if (wants && !has_param) {
      if (kind != BuiltinKind::sidon) fail(id + " needs a parameter");
      k = 2;
    }
    if (!wants && has_param) fail(id + " takes no parameter");
    FormFamily fam{Builtin{kind, k}};
    builtins_.push_back({Builtin{kind, k}, fam.arity()});
    return Tree{Tree::bi, builtins_.size() - 1, {}};
  }

  void parse_linexpr(Eq& eq, Int sign) {
    bool first = true;
    while (true) {
      Int s = sign;
      skip_ws();
      if (!first || (pos_ < src_.size() && src_[pos_] == '-')) {
        if (peek_char('+')) {
          ++pos_;
        } else if (peek_char('-')) {
          ++pos_;
          s = -sign;
        } else if (!first) {
          return;
        }
      }
      first = false;
      skip_ws();
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        Int c = parse_int();
        if (peek_char('*')) {
          ++pos_;
          add_var(eq, s * c);
        } else if (var_index(peek_ident())) {
          add_var(eq, s * c);  // "2y" reads as 2*y
        } else {
          eq.constant += s * c;
        }
      } else {
        add_var(eq, s);
      }
    }
  }

  void add_var(Eq& eq, Int c) {
    auto id = peek_ident();
    auto v = var_index(id);
    if (id.empty() || !v) fail("expected variable");
    pos_ += id.size();
    eq.coeffs[*v] += c;
    eq.max_var = std::max(eq.max_var, *v + 1);
  }

  Tree parse_equation() {
    Eq eq;
    parse_linexpr(eq, 1);
    expect('=');
    parse_linexpr(eq, -1);
    bool nonzero = std::any_of(eq.coeffs.begin(), eq.coeffs.end(), [](auto& p) { return p.second != 0; });
    if (!nonzero) fail("equation has no variables");
    equations_.push_back(std::move(eq));
    return Tree{Tree::eq, equations_.size() - 1, {}};
  }

  ConditionExpr build(const Tree& t, std::size_t arity) const {
    switch (t.kind) {
      case Tree::eq: {
        auto& e = equations_[t.index];
        std::vector<Int> c(arity, 0);
        for (auto [i, v] : e.coeffs) c[i] = v;
        return equation(LinearForm(std::move(c), e.constant));
      }
      case Tree::bi: return ConditionExpr::atom(FormFamily(builtins_[t.index].b));
      case Tree::all:
      case Tree::any: {
        std::vector<ConditionExpr> kids;
        for (auto& k : t.kids) kids.push_back(build(k, arity));
        return t.kind == Tree::all ? ConditionExpr::all_of(std::move(kids))
                                   : ConditionExpr::any_of(std::move(kids));
      }
    }
    throw InvalidParams("bad tree");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::vector<Eq> equations_;
  std::vector<Bi> builtins_;
};

}  // namespace detail

inline ConditionExpr parse_condition(std::string_view text) { return detail::Parser(text).parse(); }

inline std::string print_condition(const ConditionExpr& c) { return c.to_string(); }

}  // namespace comply
