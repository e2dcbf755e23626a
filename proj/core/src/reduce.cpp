#include "herbnet/reduce.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>

namespace herbnet {

std::string step_name(StepKind k) {
  switch (k) {
    case StepKind::Prop:
      return "Prop";
    case StepKind::Comm:
      return "Comm";
    case StepKind::Dup:
      return "Dup";
  }
  return "?";
}

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Minimal:
      return "minimal";
    case Strategy::Empire:
      return "empire";
    case Strategy::Dependent:
      return "dependent";
  }
  return "?";
}

Strategy parse_strategy(const std::string& s) {
  if (s == "minimal") return Strategy::Minimal;
  if (s == "empire") return Strategy::Empire;
  if (s == "dependent") return Strategy::Dependent;
  throw std::invalid_argument("unknown strategy '" + s + "'");
}

std::string status_name(NormalStatus s) {
  switch (s) {
    case NormalStatus::Normal:
      return "normal";
    case NormalStatus::Budget:
      return "budget";
    case NormalStatus::Garbage:
      return "garbage";
    case NormalStatus::Stuck:
      return "stuck";
  }
  return "?";
}

namespace {

void measure_into(const AeTerm& t, Measures& m) {
  switch (t.kind) {
    case NodeKind::Alpha:
    case NodeKind::Eps:
      ++m.size;
      break;
    case NodeKind::Cut:
      ++m.size;
      ++m.cuts;
      break;
    case NodeKind::Sum:
      m.wrank += t.kids.size() - 1;
      break;
    case NodeKind::Leaf:
      m.wrank += t.leaf.size() - 1;
      break;
  }
  for (const auto& k : t.kids) measure_into(k, m);
}

int root_position(const Forest& f, int id) {
  for (std::size_t p = 0; p < f.roots.size(); ++p)
    if (f.roots[p].id == id) return static_cast<int>(p);
  throw PreconditionError("node " + std::to_string(id) + " is not a root");
}

const AeTerm& cut_root(const Forest& f, int id, int* pos = nullptr) {
  int p = root_position(f, id);
  if (f.roots[p].kind != NodeKind::Cut) throw PreconditionError("root " + std::to_string(id) + " is not a cut");
  if (pos) *pos = p;
  return f.roots[p];
}

// Side of the cut holding the alpha node, or -1.
int alpha_side(const AeTerm& cut) {
  if (cut.kids[0].kind == NodeKind::Alpha && cut.kids[1].kind == NodeKind::Sum) return 0;
  if (cut.kids[1].kind == NodeKind::Alpha && cut.kids[0].kind == NodeKind::Sum) return 1;
  return -1;
}

SubstitutionRecord identity_record(const Forest& after) {
  SubstitutionRecord r;
  for (const auto& root : after.roots) r.root_map[root.id] = root.id;
  for (const auto& i : indices(after)) r.index_map[i] = i;
  return r;
}

std::string copy_base(const std::string& s) {
  auto h = s.rfind('#');
  if (h == std::string::npos || h + 1 == s.size()) return s;
  for (std::size_t k = h + 1; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return s;
  return s.substr(0, h);
}

std::string next_copy(const std::string& s, std::set<std::string>& used) {
  std::string base = copy_base(s);
  for (int k = 0;; ++k) {
    std::string c = base + "#" + std::to_string(k);
    if (used.insert(c).second) return c;
  }
}

Term rename_term(const Term& t, const std::map<std::string, std::string>& vars) {
  if (t.is_var) {
    auto it = vars.find(t.name);
    return it == vars.end() ? t : Term::var(it->second);
  }
  Term r = t;
  for (auto& a : r.args) a = rename_term(a, vars);
  return r;
}

Formula rename_free(const Formula& f, const std::map<std::string, std::string>& vars) {
  Formula r = f;
  for (const auto& v : free_vars(f)) {
    auto it = vars.find(v);
    if (it != vars.end()) r = substitute(r, v, Term::var(it->second));
  }
  return r;
}

// Applies a copy renaming; fresh_ids clears node ids so the copy gets new ones.
void apply_tau(AeTerm& t, const std::map<std::string, std::string>& vars,
               const std::map<std::string, std::string>& idx, bool fresh_ids) {
  if (fresh_ids) t.id = -1;
  switch (t.kind) {
    case NodeKind::Leaf: {
      IndexSet s;
      for (const auto& i : t.leaf) {
        auto it = idx.find(i);
        s.insert(it == idx.end() ? i : it->second);
      }
      t.leaf = std::move(s);
      break;
    }
    case NodeKind::Alpha: {
      auto it = vars.find(t.eigen);
      if (it != vars.end()) t.eigen = it->second;
      break;
    }
    case NodeKind::Eps:
      t.witness = rename_term(t.witness, vars);
      break;
    default:
      break;
  }
  for (auto& k : t.kids) apply_tau(k, vars, idx, fresh_ids);
}

void collect_witness_nodes(const AeTerm& t, std::vector<const AeTerm*>& out) {
  if (t.kind == NodeKind::Eps) out.push_back(&t);
  for (const auto& k : t.kids) collect_witness_nodes(k, out);
}

NodeSet copyable_empire(const DepGraph& g, int x) {
  NodeSet e = empire(g, x);
  NodeSet base = dependency_closure(g, x);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t r = 0; r < g.node_count(); ++r) {
      if (!e[r] || base[r]) continue;
      int p = g.parent[r];
      if (p >= 0 && e[p]) continue;
      NodeKind k = g.kinds[r];
      if (k == NodeKind::Cut || k == NodeKind::Eps) continue;
      // Drop the root together with everything above it.
      std::vector<int> work{static_cast<int>(r)};
      e[r] = false;
      while (!work.empty()) {
        int v = work.back();
        work.pop_back();
        for (int ed : g.out[v]) {
          int t = g.edges[ed].to;
          if (!g.is_index(t) && e[t]) {
            e[t] = false;
            work.push_back(t);
          }
        }
      }
      changed = true;
    }
  }
  return e;
}

NodeSet subnet_for(const DepGraph& g, int x, Strategy s) {
  switch (s) {
    case Strategy::Minimal:
      return kingdom(g, x);
    case Strategy::Empire:
      return copyable_empire(g, x);
    case Strategy::Dependent:
      return dependency_closure(g, x);
  }
  return {};
}

}  // namespace

Measures measures(const Forest& f) {
  Measures m;
  for (const auto& r : f.roots) measure_into(r, m);
  return m;
}

std::size_t cut_rank(const AeTerm& cut) { return cut.type.f.rank(); }

std::size_t cut_width(const AeTerm& cut) {
  int a = alpha_side(cut);
  return a < 0 ? 0 : cut.kids[1 - a].kids.size();
}

Reduct reduce_prop(const Forest& f, int cut) {
  int pos;
  const AeTerm& c = cut_root(f, cut, &pos);
  const AeTerm& l = c.kids[0];
  const AeTerm& r = c.kids[1];
  if (l.kind != NodeKind::Leaf || r.kind != NodeKind::Leaf)
    throw PreconditionError("cut " + std::to_string(cut) + " is not propositional");
  if (l.leaf.size() != 1 || r.leaf.size() != 1)
    throw PreconditionError("cut " + std::to_string(cut) + " has a non-singleton side");
  std::string i = *l.leaf.begin(), j = *r.leaf.begin();
  Forest g = f;
  g.roots.erase(g.roots.begin() + pos);
  g = rename_index(g, i, j);
  annotate(g);
  Reduct out{std::move(g), {}};
  out.step.kind = StepKind::Prop;
  out.step.cut = cut;
  out.step.record = identity_record(out.forest);
  out.step.after = measures(out.forest);
  return out;
}

Reduct reduce_comm(const Forest& f, int cut) {
  int pos;
  const AeTerm& c = cut_root(f, cut, &pos);
  int a = alpha_side(c);
  if (a < 0) throw PreconditionError("cut " + std::to_string(cut) + " is not an alpha/sum cut");
  const AeTerm& alpha = c.kids[a];
  const AeTerm& sum = c.kids[1 - a];
  if (sum.kids.size() != 1) throw PreconditionError("Comm needs a sum of width 1");
  const Term& m = sum.kids[0].witness;
  AeTerm t = alpha.kids[0];
  AeTerm s = sum.kids[0].kids[0];
  AeTerm nc = a == 0 ? AeTerm::make_cut(std::move(t), std::move(s)) : AeTerm::make_cut(std::move(s), std::move(t));
  nc.id = c.id;
  nc.type = NetType::cut(instantiate(c.type.f, m));
  Forest g = f;
  g.roots[pos] = std::move(nc);
  g = substitute(g, alpha.eigen, m);
  Reduct out{std::move(g), {}};
  out.step.kind = StepKind::Comm;
  out.step.cut = cut;
  out.step.record = identity_record(out.forest);
  out.step.after = measures(out.forest);
  return out;
}

std::vector<int> dup_subnet(const Forest& f, int alpha, Strategy strategy) {
  DepGraph g = dep_graph(f);
  return members(g, subnet_for(g, g.vertex(alpha), strategy));
}

Reduct reduce_dup(const Forest& f, int cut, Strategy strategy) {
  int pos;
  const AeTerm& c = cut_root(f, cut, &pos);
  int a = alpha_side(c);
  if (a < 0) throw PreconditionError("cut " + std::to_string(cut) + " is not an alpha/sum cut");
  const AeTerm& x = c.kids[a];
  const AeTerm& sum = c.kids[1 - a];
  if (sum.kids.size() < 2) throw PreconditionError("Dup needs a sum of width at least 2");

  DepGraph g = dep_graph(f);
  NodeSet in_s = subnet_for(g, g.vertex(x.id), strategy);
  if (in_s[g.vertex(c.id)]) throw PreconditionError("the duplicated subnet contains its own cut");
  for (const auto& w : sum.kids)
    if (in_s[g.vertex(w.id)])
      throw PreconditionError("witness " + std::to_string(w.id) + " of the cut lies in the duplicated subnet");

  // Names to copy.
  std::set<std::string> vars;
  IndexSet idx;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    if (!in_s[v]) continue;
    const AeTerm& n = *g.terms[v];
    if (n.kind == NodeKind::Alpha) vars.insert(n.eigen);
    if (n.kind == NodeKind::Leaf) idx.insert(n.leaf.begin(), n.leaf.end());
  }
  std::set<std::string> used_names = names(f);
  auto all_idx = indices(f);
  std::set<std::string> used_idx(all_idx.begin(), all_idx.end());
  std::map<std::string, std::string> v0, v1, i0, i1;
  for (const auto& v : vars) {
    v0[v] = next_copy(v, used_names);
    v1[v] = next_copy(v, used_names);
  }
  for (const auto& i : idx) {
    i0[i] = next_copy(i, used_idx);
    i1[i] = next_copy(i, used_idx);
  }

  auto copy = [&](const AeTerm& t, int k) {
    AeTerm r = t;
    apply_tau(r, k == 0 ? v0 : v1, k == 0 ? i0 : i1, k == 1);
    return r;
  };

  std::function<AeTerm(const AeTerm&)> dx = [&](const AeTerm& t) -> AeTerm {
    AeTerm r = t;
    r.kids.clear();
    if (t.kind == NodeKind::Leaf) {
      IndexSet s;
      for (const auto& i : t.leaf) {
        if (idx.count(i)) {
          s.insert(i0[i]);
          s.insert(i1[i]);
        } else {
          s.insert(i);
        }
      }
      r.leaf = std::move(s);
      return r;
    }
    for (const auto& k : t.kids) {
      if (!in_s[g.vertex(k.id)]) {
        r.kids.push_back(dx(k));
        continue;
      }
      if (t.kind != NodeKind::Sum)
        throw PreconditionError("node " + std::to_string(k.id) + " of the duplicated subnet hangs below a non-sum");
      r.kids.push_back(copy(k, 0));
      r.kids.push_back(copy(k, 1));
    }
    return r;
  };

  // Split of the existential side: the first witness outside every sibling's kingdom.
  std::size_t chosen = 0;
  {
    std::vector<NodeSet> ks;
    for (const auto& w : sum.kids) ks.push_back(kingdom(g, g.vertex(w.id)));
    for (std::size_t i = 0; i < sum.kids.size(); ++i) {
      bool below = false;
      for (std::size_t j = 0; j < sum.kids.size() && !below; ++j)
        if (j != i && ks[j][g.vertex(sum.kids[i].id)]) below = true;
      if (!below) {
        chosen = i;
        break;
      }
    }
  }

  Forest out;
  SubstitutionRecord rec;
  NameSupply supply;
  reserve_names(f, supply);
  for (const auto& n : used_names) supply.reserve(n);
  std::vector<std::pair<std::string, std::string>> merges;
  std::vector<AeTerm> fresh_roots;  // roots needing ids, with their old root id
  std::vector<int> fresh_old;

  for (std::size_t p = 0; p < f.roots.size(); ++p) {
    if (static_cast<int>(p) == pos) continue;
    const AeTerm& r = f.roots[p];
    if (!in_s[g.vertex(r.id)]) {
      out.roots.push_back(dx(r));
      continue;
    }
    if (r.kind == NodeKind::Cut) {
      AeTerm c0 = copy(r, 0), c1 = copy(r, 1);
      c0.type = NetType::cut(rename_free(r.type.f, v0));
      c1.type = NetType::cut(rename_free(r.type.f, v1));
      out.roots.push_back(std::move(c0));
      fresh_roots.push_back(std::move(c1));
      fresh_old.push_back(r.id);
    } else if (r.type.kind == NetType::Logical) {
      AeTerm c0 = copy(r, 0), c1 = copy(r, 1);
      auto m = merge(c0, c1, r.type.f, supply);
      m.tree.type = r.type;
      m.tree.id = r.id;
      for (const auto& pr : m.renaming) merges.push_back(pr);
      out.roots.push_back(std::move(m.tree));
    } else {
      throw PreconditionError("cannot duplicate naked witness root " + std::to_string(r.id));
    }
  }

  AeTerm a0 = copy(x, 0), a1 = copy(x, 1);
  AeTerm s0 = AeTerm::make_sum({dx(sum.kids[chosen])});
  AeTerm s1 = sum;
  s1.kids.clear();
  for (std::size_t k = 0; k < sum.kids.size(); ++k)
    if (k != chosen) s1.kids.push_back(dx(sum.kids[k]));
  AeTerm cut0 = a == 0 ? AeTerm::make_cut(std::move(a0), std::move(s0)) : AeTerm::make_cut(std::move(s0), std::move(a0));
  AeTerm cut1 = a == 0 ? AeTerm::make_cut(std::move(a1), std::move(s1)) : AeTerm::make_cut(std::move(s1), std::move(a1));
  cut0.id = c.id;
  cut0.type = c.type;
  cut1.type = c.type;
  out.roots.push_back(std::move(cut0));
  fresh_roots.push_back(std::move(cut1));
  fresh_old.push_back(c.id);

  out.next_id = f.next_id;
  out.next_id = std::max(out.next_id, max_id(f) + 1);
  for (std::size_t k = 0; k < fresh_roots.size(); ++k) {
    assign_ids(fresh_roots[k], out.next_id);
    rec.root_map[fresh_roots[k].id] = fresh_old[k];
    out.roots.push_back(std::move(fresh_roots[k]));
  }
  assign_ids(out);
  for (const auto& r : out.roots)
    if (!rec.root_map.count(r.id)) rec.root_map[r.id] = r.id;

  // Admissible contraction may have renamed eigenvariables of merged roots.
  std::map<std::string, std::string> ren;
  for (const auto& [o, n] : merges)
    if (o != n) ren[o] = n;
  for (auto& r : out.roots) {
    for (const auto& [o, n] : ren) {
      substitute_in(r, o, Term::var(n));
      if (r.type.kind == NetType::CutType) r.type = NetType::cut(rename_free(r.type.f, {{o, n}}));
    }
  }
  annotate(out);

  for (const auto& i : indices(out)) {
    std::string old = i;
    for (const auto& [o, n] : i0)
      if (n == i) old = o;
    for (const auto& [o, n] : i1)
      if (n == i) old = o;
    rec.index_map[i] = old;
  }

  Reduct res{std::move(out), {}};
  res.step.kind = StepKind::Dup;
  res.step.cut = cut;
  res.step.duplicated = members(g, in_s);
  res.step.chosen = sum.kids[chosen].id;
  res.step.tau0 = v0;
  res.step.tau1 = v1;
  for (const auto& [o, n] : i0) res.step.tau0[o] = n;
  for (const auto& [o, n] : i1) res.step.tau1[o] = n;
  res.step.record = std::move(rec);
  res.step.after = measures(res.forest);
  return res;
}

Reduct reduce(const Forest& f, int cut, Strategy strategy) {
  const AeTerm& c = cut_root(f, cut);
  if (c.kids[0].kind == NodeKind::Leaf && c.kids[1].kind == NodeKind::Leaf) return reduce_prop(f, cut);
  int a = alpha_side(c);
  if (a < 0) throw PreconditionError("cut " + std::to_string(cut) + " has no reducible shape");
  if (c.kids[1 - a].kids.size() == 1) return reduce_comm(f, cut);
  return reduce_dup(f, cut, strategy);
}

namespace {
StepKind kind_of(const AeTerm& c) {
  if (c.kids[0].kind == NodeKind::Leaf && c.kids[1].kind == NodeKind::Leaf) return StepKind::Prop;
  int a = alpha_side(c);
  if (a < 0) throw PreconditionError("cut " + std::to_string(c.id) + " has no reducible shape");
  return c.kids[1 - a].kids.size() == 1 ? StepKind::Comm : StepKind::Dup;
}

bool singleton_sides(const AeTerm& c) { return c.kids[0].leaf.size() == 1 && c.kids[1].leaf.size() == 1; }
}  // namespace

Redex pick_redex(const Forest& f, std::optional<int> forced, Strategy strategy) {
  if (forced) {
    const AeTerm& c = cut_root(f, *forced);
    return {c.id, kind_of(c)};
  }
  // Comm and Prop may fire anywhere; Dup only on a <<-maximal cut.
  std::vector<const AeTerm*> dups;
  const AeTerm* comm = nullptr;
  const AeTerm* prop = nullptr;
  bool any = false;
  for (const auto& r : f.roots) {
    if (r.kind != NodeKind::Cut) continue;
    any = true;
    if (cut_rank(r) == 0) {
      if (r.kids[0].kind == NodeKind::Leaf && singleton_sides(r) && (!prop || r.id < prop->id)) prop = &r;
    } else if (cut_width(r) == 1) {
      if (!comm || r.id < comm->id) comm = &r;
    } else if (cut_width(r) > 1) {
      dups.push_back(&r);
    }
  }
  if (!any) throw PreconditionError("no cuts");
  if (comm) return {comm->id, StepKind::Comm};
  if (prop) return {prop->id, StepKind::Prop};
  if (dups.empty()) throw PreconditionError("no reducible cut");
  // Dependent duplication has no kingdom order.
  if (strategy == Strategy::Dependent) {
    auto it = std::min_element(dups.begin(), dups.end(), [](auto* a, auto* b) { return a->id < b->id; });
    return {(*it)->id, StepKind::Dup};
  }
  DepGraph g = dep_graph(f);
  std::vector<NodeSet> ks;
  for (const auto* c : dups) ks.push_back(kingdom(g, g.vertex(c->id)));
  for (std::size_t i = 0; i < dups.size(); ++i) {
    bool below = false;
    for (std::size_t j = 0; j < dups.size() && !below; ++j)
      if (j != i && ks[j][g.vertex(dups[i]->id)]) below = true;
    if (!below) return {dups[i]->id, StepKind::Dup};
  }
  throw PreconditionError("no maximal quantifier cut");
}

bool cut_free(const Forest& f) {
  for (const auto& r : f.roots)
    if (r.kind == NodeKind::Cut) return false;
  return true;
}

std::vector<Term> witnesses(const Forest& f) {
  std::vector<const AeTerm*> ws;
  for (const auto& r : f.roots)
    if (r.kind != NodeKind::Cut) collect_witness_nodes(r, ws);
  std::vector<Term> out;
  for (const auto* w : ws) out.push_back(w->witness);
  return out;
}

std::vector<int> detect_garbage(const Forest& f) {
  std::vector<int> out;
  for (const auto& r : f.roots) {
    if (r.kind != NodeKind::Cut) continue;
    int a = alpha_side(r);
    if (a < 0) continue;
    const std::string& v = r.kids[a].eigen;
    for (const auto& w : r.kids[1 - a].kids)
      if (free_vars(w.witness).count(v)) {
        out.push_back(r.id);
        break;
      }
  }
  return out;
}

NormalizeResult normalize(const Forest& f, const NormalizeOptions& opt) {
  NormalizeResult res;
  res.forest = f;
  res.trace.initial = measures(f);
  bool first = true;
  while (!cut_free(res.forest)) {
    if (res.trace.steps.size() >= opt.max_steps) {
      res.status = NormalStatus::Budget;
      res.message = "step budget of " + std::to_string(opt.max_steps) + " exhausted";
      return res;
    }
    Reduct red;
    try {
      Redex rx = pick_redex(res.forest, first ? opt.first_cut : std::nullopt, opt.strategy);
      red = reduce(res.forest, rx.cut, opt.strategy);
    } catch (const PreconditionError& e) {
      res.status = NormalStatus::Stuck;
      res.message = e.what();
      return res;
    }
    first = false;
    res.forest = std::move(red.forest);
    res.trace.steps.push_back(std::move(red.step));
    if (opt.keep_states) res.trace.states.push_back(res.forest);
    auto garbage = detect_garbage(res.forest);
    if (!garbage.empty()) {
      res.status = NormalStatus::Garbage;
      res.message = "garbage cut " + std::to_string(garbage.front());
      return res;
    }
  }
  res.status = NormalStatus::Normal;
  return res;
}

std::optional<std::vector<int>> find_reduction(const Forest& f, Strategy strategy,
                                               const std::function<bool(const Forest&)>& goal, std::size_t max_states) {
  auto key = [](const Forest& g) {
    auto roots = canonical_roots(g);
    std::sort(roots.begin(), roots.end());
    std::string k;
    for (const auto& r : roots) k += r + "\n";
    return k;
  };
  std::set<std::string> seen{key(f)};
  std::deque<std::pair<Forest, std::vector<int>>> queue;
  queue.emplace_back(f, std::vector<int>{});
  while (!queue.empty()) {
    auto [g, path] = std::move(queue.front());
    queue.pop_front();
    if (goal(g)) return path;
    for (const auto& r : g.roots) {
      if (r.kind != NodeKind::Cut) continue;
      Reduct red;
      try {
        red = reduce(g, r.id, strategy);
      } catch (const PreconditionError&) {
        continue;
      }
      if (!seen.insert(key(red.forest)).second) continue;
      if (seen.size() > max_states) return std::nullopt;
      auto next = path;
      next.push_back(r.id);
      queue.emplace_back(std::move(red.forest), std::move(next));
    }
  }
  return std::nullopt;
}

namespace {

// Backtracking matcher; each match call hands control to the continuation
// and undoes its bindings when that fails.
struct Matcher {
  std::map<std::string, std::string> var, var_inv;
  std::map<std::string, std::string, IndexLess> idx, idx_inv;
  using Cont = std::function<bool()>;

  bool bind(std::map<std::string, std::string>& fw, std::map<std::string, std::string>& bw, const std::string& a,
            const std::string& b, std::vector<std::string>& undo) {
    auto f = fw.find(a);
    if (f != fw.end()) return f->second == b;
    if (bw.count(b)) return false;
    fw[a] = b;
    bw[b] = a;
    undo.push_back(a);
    return true;
  }
  void unbind(std::map<std::string, std::string>& fw, std::map<std::string, std::string>& bw,
              const std::vector<std::string>& undo) {
    for (const auto& a : undo) {
      bw.erase(fw[a]);
      fw.erase(a);
    }
  }

  bool term(const Term& p, const Term& h, std::vector<std::string>& undo) {
    if (p.is_var) return h.is_var && bind(var, var_inv, p.name, h.name, undo);
    if (h.is_var || p.name != h.name || p.args.size() != h.args.size()) return false;
    for (std::size_t k = 0; k < p.args.size(); ++k)
      if (!term(p.args[k], h.args[k], undo)) return false;
    return true;
  }

  bool leaf(std::vector<std::string>::const_iterator it, std::vector<std::string>::const_iterator end,
            const IndexSet& host, const Cont& k) {
    if (it == end) return k();
    auto m = idx.find(*it);
    if (m != idx.end()) return host.count(m->second) && leaf(it + 1, end, host, k);
    for (const auto& h : host) {
      if (idx_inv.count(h)) continue;
      idx[*it] = h;
      idx_inv[h] = *it;
      if (leaf(it + 1, end, host, k)) return true;
      idx.erase(*it);
      idx_inv.erase(h);
    }
    return false;
  }

  bool kids(const std::vector<AeTerm>& p, std::size_t i, const std::vector<AeTerm>& h, std::vector<bool>& used,
            const Cont& k) {
    if (i == p.size()) return k();
    for (std::size_t j = 0; j < h.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      if (node(p[i], h[j], [&] { return kids(p, i + 1, h, used, k); })) return true;
      used[j] = false;
    }
    return false;
  }

  bool node(const AeTerm& p, const AeTerm& h, const Cont& k) {
    if (p.kind != h.kind) return false;
    switch (p.kind) {
      case NodeKind::Leaf: {
        std::vector<std::string> ps(p.leaf.begin(), p.leaf.end());
        if (ps.size() > h.leaf.size()) return false;
        return leaf(ps.cbegin(), ps.cend(), h.leaf, k);
      }
      case NodeKind::Alpha: {
        std::vector<std::string> undo;
        if (bind(var, var_inv, p.eigen, h.eigen, undo) && node(p.kids[0], h.kids[0], k)) return true;
        unbind(var, var_inv, undo);
        return false;
      }
      case NodeKind::Eps: {
        std::vector<std::string> undo;
        if (term(p.witness, h.witness, undo) && node(p.kids[0], h.kids[0], k)) return true;
        unbind(var, var_inv, undo);
        return false;
      }
      case NodeKind::Sum: {
        if (p.kids.size() > h.kids.size()) return false;
        std::vector<bool> used(h.kids.size(), false);
        return kids(p.kids, 0, h.kids, used, k);
      }
      case NodeKind::Cut:
        if (node(p.kids[0], h.kids[0], [&] { return node(p.kids[1], h.kids[1], k); })) return true;
        return node(p.kids[0], h.kids[1], [&] { return node(p.kids[1], h.kids[0], k); });
    }
    return false;
  }
};

}  // namespace

bool embeds(const Forest& pattern, const Forest& host) {
  Matcher m;
  std::vector<bool> used(host.roots.size(), false);
  return m.kids(pattern.roots, 0, host.roots, used, [] { return true; });
}

}  // namespace herbnet
