#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "herbnet/formula.hpp"
#include "support/gen.hpp"

using namespace herbnet;

namespace {

Formula parse(const std::string& text) {
  Signature sig;
  return parse_formula(text, sig);
}

std::set<std::string> set_of(std::initializer_list<const char*> xs) { return {xs.begin(), xs.end()}; }

// Naive substitution into the matrix only; callers rename binders first.
Qff naive_subst(const Qff& q, const std::string& x, const Term& m) {
  std::function<Term(const Term&)> on_term = [&](const Term& t) {
    if (t.is_var) return t.name == x ? m : t;
    Term out = t;
    for (auto& a : out.args) a = on_term(a);
    return out;
  };
  Qff out = q;
  for (auto& a : out.args) a = on_term(a);
  for (auto& k : out.kids) k = naive_subst(k, x, m);
  return out;
}

}  // namespace

TEST_CASE("drinker formula parses and renders back") {
  Formula d = parse("exists x. forall y. (~A(x) | A(y))");
  REQUIRE(d.prefix.size() == 2);
  CHECK(d.prefix[0] == Binder{Quant::Exists, "x"});
  CHECK(d.prefix[1] == Binder{Quant::Forall, "y"});
  CHECK(d.matrix.kind == Qff::Or);
  CHECK(render(d) == "exists x. forall y. (~A(x) | A(y))");
}

TEST_CASE("a nullary atom is a formula with an empty prefix") {
  Formula p = parse("P");
  CHECK(p.is_qff());
  CHECK(p.matrix == Qff::atom(true, "P"));
}

TEST_CASE("repeated prefix variables are rejected") {
  CHECK_THROWS_AS(parse("forall x. exists x. P(x)"), ParseError);
  // oracle: scan the prefix for repeats
  for (const char* ok : {"forall x. exists y. P(x)", "exists x. P(x)"}) {
    Formula f = parse(ok);
    std::set<std::string> seen;
    for (const auto& b : f.prefix) CHECK(seen.insert(b.var).second);
  }
}

TEST_CASE("parse errors carry a position and arity is enforced") {
  Signature sig;
  try {
    parse_formula("exists x. (P(x) |", sig);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.pos > 0);
  }
  Signature s2;
  parse_formula("P(c)", s2);
  CHECK_THROWS_AS(parse_formula("P(c, c)", s2), ParseError);
  CHECK_THROWS_AS(parse_formula("exists x. (P(x) | forall y. Q(y))", s2), ParseError);
}

TEST_CASE("dual flips quantifiers, connectives and polarity") {
  Formula d = parse("exists x. forall y. (~A(x) | A(y))");
  CHECK(render(dual(d)) == "forall x. exists y. (A(x) & ~A(y))");
  Signature sig;
  Qff pq = parse_qff("(P & Q)", sig);
  CHECK(render(dual(pq)) == "(~P | ~Q)");
}

TEST_CASE("dual is an involution and keeps variable sets") {
  gen::Gen g(11);
  for (int k = 0; k < 200; ++k) {
    Formula a = g.formula(g.pick(4));
    CHECK(dual(dual(a)) == a);
    CHECK(vars(dual(a)) == vars(a));
  }
}

TEST_CASE("substitution examples") {
  Signature sig;
  Formula m = parse_formula("(~A(x) | A(y))", sig);
  CHECK(render(substitute(m, "x", Term::app("c"))) == "(~A(c) | A(y))");

  Formula b = parse_formula("forall y. B(x, y)", sig);
  Formula got = substitute(b, "x", Term::app("f", {Term::var("y")}));
  // oracle: rename the binder by hand, then substitute naively
  Formula expect;
  expect.prefix = {{Quant::Forall, "y0"}};
  expect.matrix = naive_subst(naive_subst(b.matrix, "y", Term::var("y0")), "x", Term::app("f", {Term::var("y")}));
  CHECK(alpha_equal(got, expect));
  CHECK(got.prefix[0].var != "y");
  CHECK(free_vars(got) == set_of({"y"}));

  Formula open = parse_formula("forall y. (~A(x) | A(y))", sig);
  CHECK(substitute(open, "x", Term::var("x")) == open);
  Formula d = parse("exists x. forall y. (~A(x) | A(y))");
  CHECK_THROWS_AS(substitute(d, "x", Term::app("c")), PreconditionError);
}

TEST_CASE("free variables after substitution stay within the expected set") {
  gen::Gen g(12);
  for (int k = 0; k < 200; ++k) {
    Formula a = g.formula(1 + g.pick(3));
    // open the first binder to get a free variable
    Formula open = instantiate(a, Term::var("u"));
    Term m = g.coin() ? Term::app("f", {Term::var("y")}) : Term::var(g.coin() ? "z" : "x");
    Formula s = substitute(open, "u", m);
    std::set<std::string> allowed = free_vars(open);
    allowed.erase("u");
    for (const auto& v : free_vars(m)) allowed.insert(v);
    for (const auto& v : free_vars(s)) CHECK(allowed.count(v));
    auto [fr, bd] = vars(s);
    for (const auto& v : fr) CHECK_FALSE(bd.count(v));
  }
}

TEST_CASE("free and bound variables") {
  auto [f1, b1] = vars(parse("exists x. forall y. (~A(x) | A(y))"));
  CHECK(f1.empty());
  CHECK(b1 == set_of({"x", "y"}));

  auto [f2, b2] = vars(parse("exists z. P(x, y, z, w)"));
  CHECK(f2.count("w"));
  CHECK(b2 == set_of({"z"}));

  auto [f3, b3] = vars(parse("P"));
  CHECK(f3.empty());
  CHECK(b3.empty());
}

TEST_CASE("render then parse is the identity on generated formulas") {
  gen::Gen g(13);
  for (int k = 0; k < 300; ++k) {
    Formula a = g.formula(g.pick(4));
    Signature sig = g.theory().sig;
    Formula back = parse_formula(render(a), sig);
    CHECK(back == a);
    CHECK(render(back) == render(a));
  }
}

TEST_CASE("fresh names follow a counter and skip used names") {
  NameSupply s(0);
  s.reserve("y0");
  CHECK(s.fresh("y") == "y1");
  CHECK(s.fresh("y7") == "y2");
  NameSupply t(40);
  CHECK(t.fresh("a") == "a40");
}
