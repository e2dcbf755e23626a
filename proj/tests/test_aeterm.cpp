#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "herbnet/aeterm.hpp"
#include "herbnet/net.hpp"
#include "herbnet/sequent.hpp"
#include "support/fixtures.hpp"
#include "support/gen.hpp"

using namespace herbnet;
using herbnet::testing::fixture;
using herbnet::testing::net_of;

namespace {

std::set<std::string> set_of(std::initializer_list<const char*> xs) { return {xs.begin(), xs.end()}; }

std::vector<char> clauses(const Forest& f) {
  std::vector<char> out;
  for (const auto& v : check_annotated_sequent(f)) out.push_back(v.clause);
  return out;
}

std::string root_text(const AeTerm& t) { return render(t); }

}  // namespace

TEST_CASE("typing") {
  NetFile d = fixture("drinker");
  REQUIRE(d.forest.roots.size() == 1);
  CHECK(d.forest.roots[0].type.kind == NetType::Logical);
  CHECK(render(d.forest.roots[0].type.f) == "exists x. forall y. (~A(x) | A(y))");

  Signature sig;
  AeTerm leaf = parse_aeterm("{1}", sig);
  CHECK_NOTHROW(typecheck(leaf, NetType::logical(parse_formula("(P0 & ~Q(c))", sig))));

  // two universal sides can never be cut against each other
  AeTerm bad = parse_aeterm("a[a].{1} >< a[b].{2}", sig);
  Formula p = parse_formula("forall x. P(x)", sig);
  CHECK_THROWS_AS(typecheck(bad, NetType::cut(p)), TypeError);
  CHECK_THROWS_AS(typecheck(bad, NetType::cut(dual(p))), TypeError);

  AeTerm alpha = parse_aeterm("a[a].{1}", sig);
  CHECK_THROWS_AS(typecheck(alpha, NetType::logical(parse_formula("exists x. P(x)", sig))), TypeError);
  AeTerm naked = parse_aeterm("e[c].{1}", sig);
  CHECK_THROWS_AS(typecheck(naked, NetType::logical(parse_formula("exists x. P(x)", sig))), TypeError);
}

TEST_CASE("alpha-free and alpha-bound variables") {
  NetFile one = net_of({{"(e[b].a[a].(e[a].{1}))", "exists x. forall y. exists z. P(x, y, z, w)"}});
  VarClasses v1 = classify_vars(one.forest);
  CHECK(v1.alpha_free == set_of({"b", "w"}));
  CHECK(v1.alpha_bound == set_of({"a"}));

  NetFile two = net_of({{"a[a].{1}", "forall x. P"}, {"(e[a].(e[b].{1}))", "exists y. exists z. Q"}});
  VarClasses v2 = classify_vars(two.forest);
  CHECK(v2.alpha_bound.count("a"));
  CHECK(v2.alpha_free.count("b"));
  CHECK_FALSE(v2.alpha_free.count("a"));

  NetFile ground = net_of({{"{1}", "P"}, {"{1}", "~P"}});
  VarClasses v3 = classify_vars(ground.forest);
  CHECK(v3.alpha_free.empty());
  CHECK(v3.alpha_bound.empty());
}

TEST_CASE("annotated sequent conditions") {
  CHECK(clauses(fixture("shared_eigen").forest) == std::vector<char>{'a'});
  CHECK(clauses(fixture("escaping_eigen").forest) == std::vector<char>{'b'});
  CHECK(clauses(fixture("strict_cut").forest).empty());
  CHECK(clauses(fixture("naked_witness").forest) == std::vector<char>{'c'});
  CHECK(is_strict(fixture("naked_witness").forest));
  CHECK_FALSE(is_strict(fixture("shared_eigen").forest));

  auto vs = check_annotated_sequent(fixture("shared_eigen").forest);
  REQUIRE(vs.size() == 1);
  CHECK(vs[0].nodes.size() == 2);
}

TEST_CASE("renaming") {
  NetFile l = net_of({{"{1,2}", "P"}});
  CHECK(root_text(rename_index(l.forest, "1", "3").roots[0]) == "{2,3}");

  NetFile w = net_of({{"(e[a].{1})", "exists x. P(x)"}});
  CHECK(root_text(rename_var(w.forest, "a", "b").roots[0]) == "(e[b].{1})");

  NetFile d = fixture("drinker");
  Forest r = rename_var(d.forest, "a", "z");
  // oracle: the same term written out by hand
  NetFile expect = net_of({{"(e[c].a[z].{1} + e[z].a[b].{1})", "exists x. forall y. (~A(x) | A(y))"}});
  CHECK(forest_equal(r, expect.forest));
  CHECK(r.roots[0].type.f == d.forest.roots[0].type.f);
  CHECK(r.roots[0].id == d.forest.roots[0].id);
  CHECK_THROWS(rename_var(d.forest, "a", "b"));
}

TEST_CASE("renaming preserves typing on generated forests") {
  gen::Gen g(21);
  int tried = 0;
  for (int k = 0; k < 400 && tried < 150; ++k) {
    Forest f = g.raw_forest(3, 2);
    auto eig = eigenvariables(f);
    if (eig.empty()) continue;
    ++tried;
    std::string a = *eig.begin();
    Forest r = rename_var(f, a, "fresh0");
    Forest re = r;
    CHECK_NOTHROW(annotate(re));
    for (std::size_t i = 0; i < f.roots.size(); ++i) {
      NetType expect = substitute_type(f.roots[i].type, a, Term::var("fresh0"));
      CHECK(render_type(r.roots[i].type) == render_type(expect));
    }
    Forest ri = rename_index(f, "1", "9");
    CHECK_NOTHROW(annotate(ri));
    CHECK_FALSE(indices(ri).count("1"));
  }
  CHECK(tried >= 100);
}

TEST_CASE("first-order substitution") {
  NetFile w = net_of({{"(e[a].{1})", "exists x. P(x, a)"}});
  Forest s = substitute(w.forest, "a", Term::app("c"));
  NetFile expect = net_of({{"(e[c].{1})", "exists x. P(x, c)"}});
  CHECK(forest_equal(s, expect.forest));
  CHECK(s.roots[0].type.f == expect.forest.roots[0].type.f);

  CHECK(forest_equal(substitute(w.forest, "a", Term::var("a")), w.forest));

  NetFile inner = net_of({{"(e[a].{1})", "exists z. Q(z)"}, {"a[d].(e[a].{1})", "forall y. exists z. Q(z)"}});
  Forest si = substitute(inner.forest, "a", Term::app("c"));
  CHECK(root_text(si.roots[1]) == "a[d].(e[c].{1})");

  NetFile bound = net_of({{"a[a].{1}", "forall x. P(x)"}});
  CHECK_THROWS_AS(substitute(bound.forest, "a", Term::app("c")), PreconditionError);
}

TEST_CASE("substitution retypes roots on generated forests") {
  gen::Gen g(22);
  int tried = 0;
  for (int k = 0; k < 600 && tried < 100; ++k) {
    Forest f = g.raw_forest(3, 2);
    VarClasses vc = classify_vars(f);
    std::set<std::string> free_only;
    for (const auto& v : vc.alpha_free)
      if (!eigenvariables(f).count(v)) free_only.insert(v);
    if (free_only.empty()) continue;
    ++tried;
    std::string a = *free_only.begin();
    Term m = Term::app("f", {Term::app("c")});
    Forest s = substitute(f, a, m);
    Forest re = s;
    CHECK_NOTHROW(annotate(re));
    for (std::size_t i = 0; i < f.roots.size(); ++i)
      CHECK(render_type(s.roots[i].type) == render_type(substitute_type(f.roots[i].type, a, m)));
  }
  CHECK(tried >= 50);
}

TEST_CASE("admissible contraction") {
  Signature sig;
  NameSupply fresh(0);
  Formula p = parse_formula("P0", sig);
  MergeResult m1 = merge(parse_aeterm("{1}", sig), parse_aeterm("{2}", sig), p, fresh);
  CHECK(render(m1.tree) == "{1,2}");
  CHECK(m1.renaming.empty());

  Formula ex = parse_formula("exists x. P(x)", sig);
  MergeResult m2 = merge(parse_aeterm("(e[c].{1} + e[d].{1})", sig), parse_aeterm("(e[f(c)].{2})", sig), ex, fresh);
  CHECK(render(m2.tree) == "(e[c].{1} + e[d].{1} + e[f(c)].{2})");
  CHECK(m2.renaming.empty());

  Formula all = parse_formula("forall x. P(x)", sig);
  fresh.reserve("a");
  fresh.reserve("b");
  MergeResult m3 = merge(parse_aeterm("a[a].{1}", sig), parse_aeterm("a[b].{2}", sig), all, fresh);
  REQUIRE(m3.tree.kind == NodeKind::Alpha);
  std::string e = m3.tree.eigen;
  CHECK(e != "a");
  CHECK(e != "b");
  CHECK(render(m3.tree) == "a[" + e + "].{1,2}");
  using P = std::pair<std::string, std::string>;
  CHECK(m3.renaming == std::vector<P>{{"a", e}, {"b", e}});

  CHECK_THROWS(merge(parse_aeterm("a[a].{1}", sig), parse_aeterm("{2}", sig), all, fresh));
}

TEST_CASE("merging two roots of a generated net keeps an annotated sequent") {
  gen::Gen g(23);
  for (int k = 0; k < 100; ++k) {
    Formula a = g.formula(1 + g.pick(3));
    Forest f = g.side({a, a});
    REQUIRE(check_annotated_sequent(f).empty());
    NameSupply fresh(0);
    reserve_names(f, fresh);
    MergeResult m = merge(f.roots[0], f.roots[1], a, fresh);
    AeTerm t = m.tree;
    CHECK_NOTHROW(typecheck(t, NetType::logical(a)));
    Forest context;
    for (std::size_t i = 2; i < f.roots.size(); ++i) context.roots.push_back(f.roots[i]);
    std::map<std::string, std::string> ren(m.renaming.begin(), m.renaming.end());
    Forest renamed = rename_vars(context, ren);
    renamed.roots.insert(renamed.roots.begin(), m.tree);
    renamed.roots.front().type = NetType::logical(a);
    annotate(renamed);
    CHECK(check_annotated_sequent(renamed).empty());
  }
}

TEST_CASE("admissible weakening") {
  NetFile base = net_of({{"{4}", "P"}, {"{4}", "~P"}});
  Signature& sig = base.theory.sig;
  NameSupply fresh(0);
  reserve_names(base.forest, fresh);

  AeTerm p = weaken(parse_formula("Q0", sig), base.forest, sig, fresh);
  CHECK(render(p) == "{4}");

  AeTerm e = weaken(parse_formula("exists x. Q(x)", sig), base.forest, sig, fresh);
  CHECK(render(e) == "(e[c].{4})");

  Formula ae = parse_formula("forall x. exists y. R(x, y)", sig);
  AeTerm a = weaken(ae, base.forest, sig, fresh);
  REQUIRE(a.kind == NodeKind::Alpha);
  CHECK(render(a) == "a[" + a.eigen + "].(e[c].{4})");
  CHECK_FALSE(eigenvariables(base.forest).count(a.eigen));
  CHECK_NOTHROW(typecheck(a, NetType::logical(ae)));

  NetFile no_const = net_of({{"{1}", "P"}}, {});
  CHECK_THROWS(weaken(parse_formula("exists x. Q(x)", no_const.theory.sig), no_const.forest, no_const.theory.sig, fresh));
}

TEST_CASE("conclusions of checked proofs are annotated sequents") {
  gen::Gen g(24);
  Theory th = g.theory();
  int checked = 0;
  for (int k = 0; k < 60; ++k) {
    Forest f = g.composed({g.formula(1 + g.pick(2))}, g.pick(3));
    if (!is_herbrand_net(f, th)) continue;
    Proof p = sequentialize(f, th);
    ProofCheck pc = check_proof(p, th);
    REQUIRE(pc.ok);
    CHECK(check_annotated_sequent(pc.conclusion).empty());
    ++checked;
  }
  CHECK(checked >= 40);
}
