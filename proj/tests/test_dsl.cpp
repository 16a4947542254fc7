#include <gtest/gtest.h>

#include <random>

#include "comply/dsl.hpp"

using namespace comply;

TEST(Parse, SingleEquation) {
  auto c = parse_condition("x1 + x3 = 2*x2");
  ASSERT_EQ(c.op(), ConditionExpr::Op::atom);
  ASSERT_EQ(c.arity(), 3u);
  ASSERT_FALSE(c.family().is_builtin());
  std::vector<Int> t{1, 3, 5};
  EXPECT_TRUE(c.holds(t));
  EXPECT_EQ(c.to_string(), "x1 + x3 = 2*x2");
}

TEST(Parse, Builtin) {
  auto c = parse_condition("ap(3)");
  ASSERT_TRUE(c.family().is_builtin());
  EXPECT_EQ(c.family().builtin().kind, BuiltinKind::ap);
  EXPECT_EQ(c.family().builtin().param, 3);
  EXPECT_EQ(parse_condition("sidon()").arity(), 4u);
  EXPECT_EQ(parse_condition("line()").arity(), 3u);
}

TEST(Parse, Disjunction) {
  auto c = parse_condition("x1 + x3 = 2*x2 OR x1 + x3 = 3*x2");
  EXPECT_EQ(c.op(), ConditionExpr::Op::any_of);
  EXPECT_EQ(c.children().size(), 2u);
  EXPECT_EQ(c.arity(), 3u);
  EXPECT_EQ(c.to_string(), "x1 + x3 = 2*x2 OR x1 + x3 = 3*x2");
}

TEST(Parse, LetterVariablesAndJuxtaposition) {
  auto a = parse_condition("x + z = 2y");
  auto b = parse_condition("x1 + x3 = 2*x2");
  EXPECT_EQ(a, b);
  EXPECT_EQ(parse_condition("x + w = y + z").arity(), 4u);
}

TEST(Parse, Precedence) {
  // AND binds tighter than OR.
  auto c = parse_condition("x1 = x2 OR x1 = x3 AND x2 = x3 + 1");
  ASSERT_EQ(c.op(), ConditionExpr::Op::any_of);
  EXPECT_EQ(c.children()[1].op(), ConditionExpr::Op::all_of);
  auto d = parse_condition("ap(3) AND (x1 = x2 + 1 OR line())");
  EXPECT_EQ(d.op(), ConditionExpr::Op::all_of);
  EXPECT_EQ(d.to_string(), "ap(3) AND (x1 = x2 + 1 OR line())");
}

TEST(Parse, CaseAndWhitespace) {
  EXPECT_EQ(parse_condition("  ap( 3 )or x1+x3=3*x2 "), parse_condition("ap(3) OR x1 + x3 = 3*x2"));
}

TEST(Parse, Constants) {
  auto c = parse_condition("x2 = x1 + 4");
  std::vector<Int> yes{1, 5}, no{1, 6};
  EXPECT_TRUE(c.holds(yes));
  EXPECT_FALSE(c.holds(no));
}

TEST(Parse, NegativeLeadingTerm) {
  auto c = parse_condition("-x1 + 2*x2 = x3");
  std::vector<Int> t{1, 2, 3};
  EXPECT_TRUE(c.holds(t));
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_condition(""), ParseError);
  EXPECT_THROW(parse_condition("ap(3"), ParseError);
  EXPECT_THROW(parse_condition("x1 + = x2"), ParseError);
  EXPECT_THROW(parse_condition("x1 = x2 AND"), ParseError);
  EXPECT_THROW(parse_condition("nosuch(3)"), ParseError);
  EXPECT_THROW(parse_condition("ap(3) x"), ParseError);
  EXPECT_THROW(parse_condition("ap(3) OR sidon(2)"), ArityError);
}

TEST(Parse, ErrorPosition) {
  try {
    parse_condition("x1 + x3 = 2*x2 OR ap(3");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 22u);
  }
}

namespace {

// Random canonical expressions built from the grammar.
std::string random_equation(std::mt19937_64& rng, std::size_t arity) {
  std::uniform_int_distribution<Int> coef(-3, 3), cst(-4, 4);
  std::vector<Int> c(arity);
  bool any = false;
  for (auto& x : c) {
    x = coef(rng);
    any = any || x != 0;
  }
  if (!any) c[0] = 1;
  return form_to_string(LinearForm(c, cst(rng)));
}

std::string random_expr(std::mt19937_64& rng, std::size_t arity, int depth) {
  std::uniform_int_distribution<int> pick(0, 5);
  int p = depth > 2 ? 0 : pick(rng);
  if (p <= 1) return random_equation(rng, arity);
  if (p == 2) return arity == 3 ? "ap(3)" : arity == 4 ? "sidon(2)" : random_equation(rng, arity);
  if (p == 3) return arity == 3 ? "line()" : random_equation(rng, arity);
  std::string op = p == 4 ? " AND " : " OR ";
  return "(" + random_expr(rng, arity, depth + 1) + op + random_expr(rng, arity, depth + 1) + ")";
}

}  // namespace

TEST(RoundTrip, ParsePrintIsIdentityOnCanonicalForms) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 400; ++trial) {
    std::size_t arity = 3 + trial % 2;
    auto c = parse_condition(random_expr(rng, arity, 0));
    auto text = print_condition(c);
    auto again = parse_condition(text);
    EXPECT_EQ(print_condition(again), text);
    EXPECT_EQ(again, c);
  }
}

TEST(RoundTrip, SemanticsSurvivePrinting) {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<Int> val(0, 9);
  for (int trial = 0; trial < 200; ++trial) {
    auto c = parse_condition(random_expr(rng, 3, 0));
    auto d = parse_condition(print_condition(c));
    ASSERT_EQ(c.arity(), d.arity());
    for (int k = 0; k < 20; ++k) {
      std::vector<Int> t(c.arity());
      for (auto& x : t) x = val(rng);
      EXPECT_EQ(c.holds(t), d.holds(t)) << print_condition(c);
    }
  }
}
