#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "herbnet/net.hpp"
#include "herbnet/reduce.hpp"
#include "support/fixtures.hpp"
#include "support/gen.hpp"
#include "support/steps.hpp"

using namespace herbnet;
using herbnet::testing::cut_ids;
using herbnet::testing::fixture;
using herbnet::testing::net_of;
using herbnet::testing::replay;

namespace {

std::vector<std::string> rendered(const std::vector<Term>& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(render(t));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("propositional cuts") {
  NetFile prop_cut = fixture("prop_cut");
  Reduct r = reduce_prop(prop_cut.forest, cut_ids(prop_cut.forest)[0]);
  // oracle: rename 1 to 2 in every leaf by hand
  NetFile expect = net_of({{"{2}", "P"}, {"{2}", "~P"}});
  CHECK(forest_equal(r.forest, expect.forest));
  CHECK(r.step.kind == StepKind::Prop);

  NetFile small = net_of({{"{1}", "~P"}, {"{2}", "P"}, {"{1} >< {2}", "P", "cut"}});
  Reduct s = reduce_prop(small.forest, cut_ids(small.forest)[0]);
  CHECK(forest_equal(s.forest, net_of({{"{2}", "~P"}, {"{2}", "P"}}).forest));
  CHECK(is_herbrand_net(s.forest, small.theory));

  NetFile wide = net_of({{"{1,3}", "~P"}, {"{2}", "P"}, {"{1,3} >< {2}", "P", "cut"}});
  CHECK_THROWS_AS(reduce_prop(wide.forest, cut_ids(wide.forest)[0]), PreconditionError);
  NetFile quant = fixture("nonconfluent");
  CHECK_THROWS_AS(reduce_prop(quant.forest, 0), PreconditionError);
}

TEST_CASE("communication") {
  NetFile in = net_of({{"(e[a].{1})", "exists x. ~P(x)"}, {"a[a].{1} >< (e[c].{2})", "forall x. P(x)", "cut"},
                       {"{2}", "P(c)"}});
  Reduct r = reduce_comm(in.forest, cut_ids(in.forest)[0]);
  // oracle: substitute c for a everywhere and strip the quantifier pair
  NetFile expect = net_of({{"(e[c].{1})", "exists x. ~P(x)"}, {"{1} >< {2}", "P(c)", "cut"}, {"{2}", "P(c)"}});
  CHECK(forest_equal(r.forest, expect.forest));
  CHECK(r.step.kind == StepKind::Comm);
  CHECK(r.forest.roots[1].id == in.forest.roots[1].id);

  NetFile vac = net_of({{"{1}", "~P(c)"}, {"a[a].{1} >< (e[c].{2})", "forall x. P(c)", "cut"}, {"{2}", "P(c)"}});
  Reduct v = reduce_comm(vac.forest, cut_ids(vac.forest)[0]);
  CHECK(render_root(v.forest.roots[0]) == render_root(vac.forest.roots[0]));
  CHECK(render_root(v.forest.roots[2]) == render_root(vac.forest.roots[2]));

  NetFile two = net_of({{"a[a].{1} >< (e[c].{2} + e[d].{2})", "forall x. P(x)", "cut"}}, {{"c", 0}, {"d", 0}});
  CHECK_THROWS_AS(reduce_comm(two.forest, cut_ids(two.forest)[0]), PreconditionError);
}

TEST_CASE("duplication of a kingdom that is one universal over a leaf") {
  NetFile in = net_of({{"{1}", "(Q | ~Q)"},
                       {"{2}", "(Q | ~Q)"},
                       {"a[a].{1} >< (e[c].{2} + e[d].{2})", "forall x. (P(x) | ~P(x))", "cut"}},
                      {{"c", 0}, {"d", 0}});
  REQUIRE(is_herbrand_net(in.forest, in.theory));
  int cut = cut_ids(in.forest)[0];
  CHECK(pick_redex(in.forest).kind == StepKind::Dup);
  Reduct r = reduce_dup(in.forest, cut, Strategy::Minimal);
  CHECK(std::set<int>(r.step.duplicated.begin(), r.step.duplicated.end()) == kingdom_ids(in.forest, 3));
  // oracle: two renamed copies of a[a].{1}, one per witness, the outside leaf widened
  REQUIRE(r.forest.roots.size() == 4);
  CHECK(render(r.forest.roots[0]) == "{1#0,1#1}");
  CHECK(render(r.forest.roots[1]) == "{2}");
  std::vector<std::string> cuts;
  for (const auto& t : r.forest.roots)
    if (t.kind == NodeKind::Cut) cuts.push_back(render(t));
  std::sort(cuts.begin(), cuts.end());
  CHECK(cuts == std::vector<std::string>{"a[a#0].{1#0} >< (e[c].{2})", "a[a#1].{1#1} >< (e[d].{2})"});
  for (const auto& t : r.forest.roots)
    if (t.kind == NodeKind::Cut) CHECK(cut_width(t) == 1);
  CHECK(is_herbrand_net(r.forest, in.theory));
  CHECK(r.step.record.index_map.at("1#0") == "1");
  CHECK(r.step.record.index_map.at("1#1") == "1");

  NetFile narrow = net_of({{"a[a].{1} >< (e[c].{2})", "forall x. P(x)", "cut"}});
  CHECK_THROWS_AS(reduce_dup(narrow.forest, cut_ids(narrow.forest)[0]), PreconditionError);
}

TEST_CASE("the first step on the nonconfluent net") {
  NetFile nc = fixture("nonconfluent");
  Redex left = pick_redex(nc.forest, 0);
  CHECK(left.kind == StepKind::Dup);
  CHECK(left.cut == 0);
  Redex right = pick_redex(nc.forest, 12);
  CHECK(right.kind == StepKind::Dup);
  CHECK(right.cut == 12);

  Reduct r = reduce_dup(nc.forest, 0);
  std::set<int> dup(r.step.duplicated.begin(), r.step.duplicated.end());
  CHECK(dup == kingdom_ids(nc.forest, 8));
  // the leaf {2} under the output root lies outside the kingdom and gets both copies
  const AeTerm* out_leaf = find_node(r.forest, 26);
  REQUIRE(out_leaf);
  CHECK(render(*out_leaf) == "{2#0,2#1}");
  CHECK_FALSE(indices(r.forest).count("2"));
  CHECK(is_herbrand_net(r.forest, nc.theory));

  Reduct q = reduce_dup(nc.forest, 12);
  std::set<int> dq(q.step.duplicated.begin(), q.step.duplicated.end());
  CHECK(dq == kingdom_ids(nc.forest, 13));
}

TEST_CASE("redex choice") {
  NetFile p = net_of({{"{1}", "~P"}, {"{2}", "P"}, {"{1} >< {2}", "P", "cut"}});
  CHECK(pick_redex(p.forest).kind == StepKind::Prop);
  CHECK_THROWS_AS(pick_redex(fixture("drinker").forest), PreconditionError);
  CHECK_THROWS_AS(pick_redex(fixture("nonconfluent").forest, 24), PreconditionError);
}

TEST_CASE("the two orders on the nonconfluent net") {
  NetFile nc = fixture("nonconfluent");
  NormalizeOptions opt;
  opt.keep_states = true;
  opt.first_cut = 0;
  NormalizeResult l = normalize(nc.forest, opt);
  REQUIRE(l.status == NormalStatus::Normal);
  CHECK(rendered(witnesses(l.forest)) == std::vector<std::string>{"0", "s(0)", "s(s(0))"});

  // h is instantiated with 0 by one of the communications
  bool zero_into_h = false;
  Forest f = nc.forest;
  for (std::size_t k = 0; k < l.trace.steps.size(); ++k) {
    const auto& st = l.trace.steps[k];
    if (st.kind == StepKind::Comm) {
      const AeTerm* c = find_node(f, st.cut);
      const AeTerm& a = c->kids[0].kind == NodeKind::Alpha ? c->kids[0] : c->kids[1];
      const AeTerm& s = c->kids[0].kind == NodeKind::Alpha ? c->kids[1] : c->kids[0];
      if (a.eigen.rfind("h", 0) == 0 && render(s.kids[0].witness) == "0") zero_into_h = true;
    }
    f = l.trace.states[k];
  }
  CHECK(zero_into_h);

  // the first two propositional steps fold indices 1, 2#0 and 2#1 into one
  std::size_t p1 = 0;
  while (l.trace.steps[p1].kind != StepKind::Prop) ++p1;
  REQUIRE(l.trace.steps[p1 + 1].kind == StepKind::Prop);
  auto before = indices(l.trace.states[p1 - 1]);
  auto after = indices(l.trace.states[p1 + 1]);
  for (const char* i : {"1", "2#0", "2#1"}) CHECK(before.count(i));
  int left = 0;
  for (const char* i : {"1", "2#0", "2#1"}) left += static_cast<int>(after.count(i));
  CHECK(left == 1);
  CHECK(after.size() + 2 == before.size());

  opt.first_cut = 12;
  NormalizeResult r = normalize(nc.forest, opt);
  REQUIRE(r.status == NormalStatus::Normal);
  CHECK(rendered(witnesses(r.forest)) == std::vector<std::string>{"0", "s(0)", "s(s(0))", "s(s(s(0)))"});

  for (const auto& st : l.trace.states) CHECK(is_herbrand_net(st, nc.theory));
  for (const auto& st : r.trace.states) CHECK(is_herbrand_net(st, nc.theory));
}

TEST_CASE("measures shrink") {
  NetFile nc = fixture("nonconfluent");
  Forest f = nc.forest;
  for (int k = 0; k < 40 && !cut_free(f); ++k) {
    Redex x = pick_redex(f);
    const AeTerm* c = find_node(f, x.cut);
    Measures m = measures(f);
    std::size_t w = cut_width(*c), rank = cut_rank(*c);
    Reduct r = reduce(f, x.cut);
    if (x.kind == StepKind::Comm) {
      CHECK(r.step.after.size + 2 == m.size);
      const AeTerm* nc = find_node(r.forest, x.cut);
      REQUIRE(nc);
      CHECK(cut_rank(*nc) + 1 == rank);
    }
    if (x.kind == StepKind::Dup) {
      std::vector<std::size_t> ws;
      for (const auto& t : r.forest.roots)
        if (t.kind == NodeKind::Cut && r.step.record.root_map.at(t.id) == x.cut) ws.push_back(cut_width(t));
      CHECK(ws.size() == 2);
      for (auto nw : ws) CHECK(nw < w);
    }
    f = std::move(r.forest);
  }
}

TEST_CASE("normalizing a cut-free net does nothing") {
  NetFile d = fixture("drinker");
  NormalizeResult r = normalize(d.forest);
  CHECK(r.status == NormalStatus::Normal);
  CHECK(r.trace.steps.empty());
  CHECK(forest_equal(r.forest, d.forest));
}

TEST_CASE("garbage") {
  NetFile g = net_of({{"a[a].{1} >< (e[f(a)].{1})", "forall x. P(x)", "cut"}}, {{"c", 0}, {"f", 1}});
  CHECK(detect_garbage(g.forest) == std::vector<int>{g.forest.roots[0].id});
  CHECK(detect_garbage(fixture("drinker").forest).empty());
  for (const char* n : herbnet::testing::kCorpus) {
    NetFile nf = fixture(n);
    if (is_herbrand_net(nf.forest, nf.theory)) CHECK(detect_garbage(nf.forest).empty());
  }
}

TEST_CASE("minimal steps keep nets, types and tautologies on the fixtures") {
  for (const char* n : herbnet::testing::kCorpus) {
    NetFile nf = fixture(n);
    if (!is_herbrand_net(nf.forest, nf.theory)) continue;
    CAPTURE(n);
    std::vector<std::optional<int>> firsts = {std::nullopt};
    for (int c : cut_ids(nf.forest)) firsts.push_back(c);
    for (auto first : firsts) {
      std::size_t steps = 0;
      CHECK(replay(nf.forest, nf.theory, first, steps) == 0);
      CHECK(steps <= 10 * node_count(nf.forest));
    }
  }
}

TEST_CASE("minimal steps keep nets, types and tautologies on composed nets") {
  gen::Gen g(61);
  Theory th = g.theory();
  int done = 0;
  for (int k = 0; k < 80; ++k) {
    Forest f = g.composed({g.formula(1 + g.pick(2))}, 1 + g.pick(3));
    if (!is_herbrand_net(f, th)) continue;
    std::size_t steps = 0;
    CHECK(replay(f, th, std::nullopt, steps) == 0);
    ++done;
  }
  CHECK(done >= 60);
}

TEST_CASE("the dependent strategy can reach garbage on the nonconfluent net") {
  NetFile nc = fixture("nonconfluent");
  auto garbage = [](const Forest& f) { return !detect_garbage(f).empty(); };
  auto path = find_reduction(nc.forest, Strategy::Dependent, garbage, 20000);
  REQUIRE(path);
  Forest f = nc.forest;
  for (int c : *path) f = reduce(f, c, Strategy::Dependent).forest;
  CHECK_FALSE(detect_garbage(f).empty());
  CHECK_FALSE(acc_check(f).ok);

  CHECK_FALSE(find_reduction(nc.forest, Strategy::Minimal, garbage, 1500));
}

TEST_CASE("the empire strategy on the looping net reproduces its input") {
  NetFile n = fixture("empire_loop");
  NormalizeOptions opt;
  opt.strategy = Strategy::Empire;
  opt.max_steps = 10;
  opt.keep_states = true;
  NormalizeResult r = normalize(n.forest, opt);
  CHECK(r.status == NormalStatus::Budget);
  bool seen = false;
  for (const auto& st : r.trace.states) seen |= embeds(n.forest, st);
  CHECK(seen);
  CHECK(embeds(n.forest, n.forest));
  CHECK_FALSE(embeds(fixture("nonconfluent").forest, n.forest));
}

TEST_CASE("trace measures follow the forest") {
  NetFile nc = fixture("nonconfluent");
  NormalizeOptions opt;
  opt.keep_states = true;
  NormalizeResult r = normalize(nc.forest, opt);
  CHECK(r.trace.initial.size == measures(nc.forest).size);
  for (std::size_t k = 0; k < r.trace.steps.size(); ++k) {
    CHECK(r.trace.steps[k].after.size == measures(r.trace.states[k]).size);
    CHECK(r.trace.steps[k].after.wrank == measures(r.trace.states[k]).wrank);
  }
}
