#include "herbnet/net.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "herbnet/sequent.hpp"

namespace herbnet {

// -------------------------------------------------------------- dep graph

bool DepGraph::switched(int v) const {
  if (is_index(v)) return false;
  NodeKind k = kinds[v];
  return k == NodeKind::Alpha || k == NodeKind::Sum || k == NodeKind::Leaf;
}

namespace {

void collect_nodes(const AeTerm& t, int parent, std::vector<std::pair<const AeTerm*, int>>& out) {
  out.emplace_back(&t, parent);
  for (const auto& k : t.kids) collect_nodes(k, t.id, out);
}

void add_edge(DepGraph& g, int from, int to, EdgeKind k) {
  int e = static_cast<int>(g.edges.size());
  g.edges.push_back({from, to, k});
  g.out[from].push_back(e);
  g.in[to].push_back(e);
}

}  // namespace

DepGraph dep_graph(const Forest& f) {
  DepGraph g;
  std::vector<std::pair<const AeTerm*, int>> nodes;
  for (const auto& r : f.roots) collect_nodes(r, -1, nodes);
  std::sort(nodes.begin(), nodes.end(), [](const auto& a, const auto& b) { return a.first->id < b.first->id; });
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    const AeTerm* t = nodes[v].first;
    if (g.vertex_of_id.count(t->id)) throw PreconditionError("duplicate node id " + std::to_string(t->id));
    g.vertex_of_id[t->id] = static_cast<int>(v);
    g.node_ids.push_back(t->id);
    g.kinds.push_back(t->kind);
    g.terms.push_back(t);
  }
  IndexSet idx = indices(f);
  for (const auto& i : idx) {
    g.vertex_of_index[i] = static_cast<int>(g.node_ids.size() + g.index_names.size());
    g.index_names.push_back(i);
  }
  std::size_t nv = g.vertex_count();
  g.in.assign(nv, {});
  g.out.assign(nv, {});
  g.parent.assign(nv, -1);

  std::map<std::string, int> alpha_of;
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    const AeTerm* t = nodes[v].first;
    if (t->kind != NodeKind::Alpha) continue;
    if (!alpha_of.emplace(t->eigen, static_cast<int>(v)).second)
      throw PreconditionError("duplicate eigenvariable " + t->eigen);
  }
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    const AeTerm* t = nodes[v].first;
    if (nodes[v].second >= 0) {
      int p = g.vertex_of_id.at(nodes[v].second);
      g.parent[v] = p;
      add_edge(g, static_cast<int>(v), p, EdgeKind::Tree);
    }
    std::set<std::string> fv;
    EdgeKind jump = EdgeKind::WitnessJump;
    if (t->kind == NodeKind::Eps) {
      fv = free_vars(t->witness);
    } else if (t->kind == NodeKind::Cut) {
      fv = free_vars(t->type.f);
      jump = EdgeKind::CutJump;
    }
    for (const auto& a : fv) {
      auto it = alpha_of.find(a);
      if (it != alpha_of.end()) add_edge(g, static_cast<int>(v), it->second, jump);
    }
  }
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    const AeTerm* t = nodes[v].first;
    if (t->kind != NodeKind::Leaf) continue;
    for (const auto& i : t->leaf) add_edge(g, g.vertex_of_index.at(i), static_cast<int>(v), EdgeKind::IndexJump);
  }
  return g;
}

// -------------------------------------------------------------------- ACC

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

// Switching graph of a vertex subset: fixed edges plus groups of edges of
// which exactly one is kept.
struct SwitchProblem {
  std::vector<int> vertices;  // DepGraph vertex per local vertex
  std::vector<int> local;     // DepGraph vertex -> local, -1 if absent
  std::vector<int> fixed;     // edge numbers
  std::vector<std::pair<int, std::vector<int>>> groups;  // target vertex, edge numbers
};

SwitchProblem build_problem(const DepGraph& g, const std::vector<bool>& in_set) {
  SwitchProblem sp;
  sp.local.assign(g.vertex_count(), -1);
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (in_set[v]) {
      sp.local[v] = static_cast<int>(sp.vertices.size());
      sp.vertices.push_back(static_cast<int>(v));
    }
  for (int v : sp.vertices) {
    std::vector<int> es;
    for (int e : g.in[v])
      if (in_set[g.edges[e].from]) es.push_back(e);
    if (es.empty()) continue;
    if (g.switched(v)) {
      sp.groups.emplace_back(v, es);
    } else {
      sp.fixed.insert(sp.fixed.end(), es.begin(), es.end());
    }
  }
  return sp;
}

std::vector<bool> full_set(const DepGraph& g) { return std::vector<bool>(g.vertex_count(), true); }

std::vector<bool> with_indices(const DepGraph& g, const NodeSet& members) {
  std::vector<bool> s(g.vertex_count(), false);
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    if (!members[v]) continue;
    s[v] = true;
    if (g.kinds[v] == NodeKind::Leaf)
      for (int e : g.in[v]) s[g.edges[e].from] = true;
  }
  return s;
}

AccResult naive_acc(const DepGraph& g, const SwitchProblem& sp, std::uint64_t cap) {
  AccResult r;
  std::size_t nv = sp.vertices.size();
  std::size_t ne = sp.fixed.size() + sp.groups.size();
  std::uint64_t total = 1;
  for (const auto& grp : sp.groups) {
    if (total > cap / grp.second.size() + 1) throw BudgetError("switching budget exceeded");
    total *= grp.second.size();
  }
  if (total > cap) throw BudgetError("switching budget exceeded (" + std::to_string(total) + " switchings)");
  if (nv == 0) {
    r.ok = true;
    return r;
  }
  UnionFind base(nv);
  for (int e : sp.fixed) {
    if (!base.unite(sp.local[g.edges[e].from], sp.local[g.edges[e].to])) {
      r.reason = "cycle in every switching";
      r.cycle = {g.edges[e].from, g.edges[e].to};
      r.switchings_checked = 1;
      return r;
    }
  }
  std::vector<std::size_t> choice(sp.groups.size(), 0);
  for (;;) {
    ++r.switchings_checked;
    UnionFind uf = base;
    bool cyc = false;
    int bad = -1;
    for (std::size_t k = 0; k < sp.groups.size() && !cyc; ++k) {
      int e = sp.groups[k].second[choice[k]];
      if (!uf.unite(sp.local[g.edges[e].from], sp.local[g.edges[e].to])) {
        cyc = true;
        bad = e;
      }
    }
    if (cyc || ne != nv - 1) {
      for (std::size_t k = 0; k < sp.groups.size(); ++k) r.switching[sp.groups[k].first] = sp.groups[k].second[choice[k]];
      if (cyc) {
        r.reason = "switching graph has a cycle";
        r.cycle = {g.edges[bad].from, g.edges[bad].to};
      } else {
        r.reason = "switching graph is disconnected";
      }
      return r;
    }
    std::size_t k = 0;
    while (k < choice.size() && ++choice[k] == sp.groups[k].second.size()) choice[k++] = 0;
    if (k == choice.size()) break;
  }
  r.ok = true;
  return r;
}

// Contraction of the switching structure: merge fixed edges, then collapse
// groups whose remaining edges all join the same pair of classes.
AccResult contract_acc(const DepGraph& g, const SwitchProblem& sp) {
  AccResult r;
  std::size_t nv = sp.vertices.size();
  if (nv == 0) {
    r.ok = true;
    return r;
  }
  if (sp.fixed.size() + sp.groups.size() != nv - 1) {
    r.reason = sp.fixed.size() + sp.groups.size() < nv - 1 ? "switching graph is disconnected"
                                                           : "switching graph has a cycle";
    return r;
  }
  UnionFind uf(nv);
  for (int e : sp.fixed)
    if (!uf.unite(sp.local[g.edges[e].from], sp.local[g.edges[e].to])) {
      r.reason = "cycle in every switching";
      r.cycle = {g.edges[e].from, g.edges[e].to};
      return r;
    }
  std::vector<bool> done(sp.groups.size(), false);
  std::size_t left = sp.groups.size();
  bool progress = true;
  while (left && progress) {
    progress = false;
    for (std::size_t k = 0; k < sp.groups.size(); ++k) {
      if (done[k]) continue;
      int t = uf.find(sp.local[sp.groups[k].first]);
      std::set<int> srcs;
      for (int e : sp.groups[k].second) {
        int s = uf.find(sp.local[g.edges[e].from]);
        if (s == t) {
          r.reason = "switching graph has a cycle";
          r.cycle = {g.edges[e].from, g.edges[e].to};
          return r;
        }
        srcs.insert(s);
      }
      if (srcs.size() == 1) {
        uf.unite(*srcs.begin(), t);
        done[k] = true;
        --left;
        progress = true;
      }
    }
  }
  if (left) {
    r.reason = "switching structure does not contract";
    return r;
  }
  r.ok = true;
  return r;
}

}  // namespace

bool dependency_acyclic(const DepGraph& g, std::vector<int>* cycle) {
  std::size_t n = g.vertex_count();
  std::vector<int> state(n, 0), from(n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    if (state[s]) continue;
    std::vector<std::pair<int, std::size_t>> stack{{static_cast<int>(s), 0}};
    state[s] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < g.out[v].size()) {
        int w = g.edges[g.out[v][i++]].to;
        if (state[w] == 1) {
          if (cycle) {
            cycle->clear();
            for (int x = v; x != w && x >= 0; x = from[x]) cycle->push_back(x);
            cycle->push_back(w);
            std::reverse(cycle->begin(), cycle->end());
          }
          return false;
        }
        if (state[w] == 0) {
          state[w] = 1;
          from[w] = v;
          stack.emplace_back(w, 0);
        }
      } else {
        state[v] = 2;
        stack.pop_back();
      }
    }
  }
  return true;
}

bool cut_free_criterion(const DepGraph& g, std::vector<int>* cycle) {
  if (g.index_names.size() != 1) return false;
  return dependency_acyclic(g, cycle);
}

AccResult acc_check_graph(const DepGraph& g, const AccConfig& cfg) {
  bool has_cut = std::find(g.kinds.begin(), g.kinds.end(), NodeKind::Cut) != g.kinds.end();
  if (cfg.mode == AccMode::Fast) {
    if (!has_cut) {
      AccResult r;
      std::vector<int> cyc;
      if (g.index_names.size() != 1) {
        r.reason = g.index_names.empty() ? "no tautology index"
                                         : std::to_string(g.index_names.size()) + " tautology indices in a cut-free forest";
        return r;
      }
      if (!dependency_acyclic(g, &cyc)) {
        r.reason = "dependency graph has a cycle";
        r.cycle = cyc;
        return r;
      }
      r.ok = true;
      return r;
    }
    auto sp = build_problem(g, full_set(g));
    AccResult r = contract_acc(g, sp);
    if (r.ok) return r;
    // Recover a failing switching when that is affordable.
    try {
      AccResult w = naive_acc(g, sp, cfg.max_switchings);
      if (!w.ok) return w;
    } catch (const BudgetError&) {
    }
    return r;
  }
  return naive_acc(g, build_problem(g, full_set(g)), cfg.max_switchings);
}

AccResult acc_check(const Forest& f, const AccConfig& cfg) { return acc_check_graph(dep_graph(f), cfg); }

bool acc_subset(const DepGraph& g, const NodeSet& m, AccMode mode, std::uint64_t max_switchings) {
  auto sp = build_problem(g, with_indices(g, m));
  if (mode == AccMode::Fast) return contract_acc(g, sp).ok;
  return naive_acc(g, sp, max_switchings).ok;
}

// ------------------------------------------------------ Herbrand structure

std::vector<Qff> index_disjuncts(const Forest& f, const std::string& index) {
  std::vector<std::pair<int, Qff>> leaves;
  std::function<void(const AeTerm&)> walk = [&](const AeTerm& t) {
    if (t.kind == NodeKind::Leaf && t.leaf.count(index)) leaves.emplace_back(t.id, t.type.f.matrix);
    for (const auto& k : t.kids) walk(k);
  };
  for (const auto& r : f.roots) walk(r);
  std::sort(leaves.begin(), leaves.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Qff> out;
  for (auto& [id, q] : leaves) out.push_back(std::move(q));
  return out;
}

StructureReport herbrand_structure_check(const Forest& f, const Theory& th, const GroundingConfig& cfg) {
  StructureReport rep;
  for (const auto& i : indices(f)) {
    IndexReport ir;
    ir.index = i;
    ir.disjuncts = index_disjuncts(f, i);
    ir.result = is_tautology(ir.disjuncts, th, cfg);
    if (!ir.result.valid()) rep.ok = false;
    rep.indices.push_back(std::move(ir));
  }
  return rep;
}

NetReport check_net(const Forest& f, const Theory& th, const AccConfig& acc, const GroundingConfig& gc) {
  NetReport rep;
  Forest copy = f;
  try {
    annotate(copy);
  } catch (const TypeError& e) {
    rep.type_error = e.what();
    rep.failures.push_back(std::string("type error: ") + e.what());
    return rep;
  }
  rep.violations = check_annotated_sequent(copy);
  bool dup_eigen = false;
  for (const auto& v : rep.violations) {
    rep.failures.push_back(v.message);
    if (v.clause == 'a') dup_eigen = true;
  }
  if (!dup_eigen) {
    try {
      rep.acc = acc_check(copy, acc);
      if (!rep.acc->ok) rep.failures.push_back("not ACC: " + rep.acc->reason);
    } catch (const BudgetError& e) {
      rep.failures.push_back(std::string("ACC undecided: ") + e.what());
    }
  }
  rep.structure = herbrand_structure_check(copy, th, gc);
  for (const auto& ir : rep.structure->indices) {
    if (ir.result.status == TautStatus::Invalid)
      rep.failures.push_back("index " + ir.index + " is not a tautology");
    else if (ir.result.status == TautStatus::Unknown)
      rep.failures.push_back("index " + ir.index + " undecided: " + ir.result.reason);
  }
  rep.ok = rep.failures.empty();
  return rep;
}

bool is_herbrand_net(const Forest& f, const Theory& th) { return check_net(f, th).ok; }

// ----------------------------------------------------------------- subnets

std::vector<int> members(const DepGraph& g, const NodeSet& s) {
  std::vector<int> out;
  for (std::size_t v = 0; v < g.node_count(); ++v)
    if (s[v]) out.push_back(g.node_ids[v]);
  return out;
}

bool dependency_closed(const DepGraph& g, const NodeSet& s) {
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    if (!s[v]) continue;
    for (int e : g.in[v]) {
      int src = g.edges[e].from;
      if (!g.is_index(src) && !s[src]) return false;
    }
  }
  return true;
}

namespace {
// Closure over sources of incoming edges; works on all vertices.
void close_under_dependency(const DepGraph& g, std::vector<bool>& s) {
  std::vector<int> work;
  for (std::size_t v = 0; v < s.size(); ++v)
    if (s[v]) work.push_back(static_cast<int>(v));
  while (!work.empty()) {
    int v = work.back();
    work.pop_back();
    for (int e : g.in[v]) {
      int src = g.edges[e].from;
      if (!s[src]) {
        s[src] = true;
        work.push_back(src);
      }
    }
  }
}

NodeSet nodes_only(const DepGraph& g, const std::vector<bool>& s) {
  return NodeSet(s.begin(), s.begin() + static_cast<long>(g.node_count()));
}

// Empire closure of x inside the dependency-closed vertex set `within`.
std::vector<bool> empire_within(const DepGraph& g, int x, const std::vector<bool>& within) {
  std::vector<bool> e(g.vertex_count(), false);
  e[x] = true;
  int px = x < static_cast<int>(g.node_count()) ? g.parent[x] : -1;
  bool changed = true;
  while (changed) {
    changed = false;
    close_under_dependency(g, e);
    for (std::size_t z = 0; z < g.node_count(); ++z) {
      if (e[z] || !within[z] || static_cast<int>(z) == px) continue;
      const auto& ins = g.in[z];
      if (ins.empty()) continue;
      bool any = false, all = true;
      for (int ed : ins) {
        bool in = e[g.edges[ed].from];
        any = any || in;
        all = all && in;
      }
      if (g.switched(static_cast<int>(z)) ? all : any) {
        e[z] = true;
        changed = true;
      }
    }
  }
  return e;
}

std::vector<bool> empire_all(const DepGraph& g, int x) {
  return empire_within(g, x, std::vector<bool>(g.vertex_count(), true));
}

struct EmpireCache {
  const DepGraph& g;
  std::vector<std::vector<bool>> cache;
  std::vector<bool> have;
  explicit EmpireCache(const DepGraph& gr) : g(gr), cache(gr.vertex_count()), have(gr.vertex_count(), false) {}
  const std::vector<bool>& get(int v) {
    if (!have[v]) {
      cache[v] = empire_all(g, v);
      have[v] = true;
    }
    return cache[v];
  }
};

// Shrinks the empire: for each node z outside the dependency closure of x,
// look for a subnet rooted at x avoiding z and everything above z.
std::vector<bool> kingdom_all(const DepGraph& g, int x, EmpireCache& emp) {
  std::vector<bool> k = emp.get(x);
  std::vector<bool> base(g.vertex_count(), false);
  base[x] = true;
  close_under_dependency(g, base);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t z = g.node_count(); z-- > 0;) {
      if (!k[z] || base[z]) continue;
      std::vector<bool> h = k;
      std::vector<int> work{static_cast<int>(z)};
      h[z] = false;
      while (!work.empty()) {
        int v = work.back();
        work.pop_back();
        for (int e : g.out[v]) {
          int t = g.edges[e].to;
          if (h[t]) {
            h[t] = false;
            work.push_back(t);
          }
        }
      }
      std::vector<bool> e = empire_within(g, x, h);
      if (!acc_subset(g, nodes_only(g, e), AccMode::Fast)) continue;
      k = std::move(e);
      changed = true;
      break;
    }
  }
  return k;
}
}  // namespace

NodeSet dependency_closure(const DepGraph& g, int vertex) {
  std::vector<bool> s(g.vertex_count(), false);
  s[vertex] = true;
  close_under_dependency(g, s);
  return nodes_only(g, s);
}

NodeSet empire(const DepGraph& g, int vertex) { return nodes_only(g, empire_all(g, vertex)); }

NodeSet kingdom(const DepGraph& g, int vertex) {
  EmpireCache emp(g);
  return nodes_only(g, kingdom_all(g, vertex, emp));
}

std::set<int> empire_ids(const Forest& f, int id) {
  auto g = dep_graph(f);
  auto m = members(g, empire(g, g.vertex(id)));
  return {m.begin(), m.end()};
}

std::set<int> kingdom_ids(const Forest& f, int id) {
  auto g = dep_graph(f);
  auto m = members(g, kingdom(g, g.vertex(id)));
  return {m.begin(), m.end()};
}

KingdomOrder kingdom_order(const DepGraph& g) {
  KingdomOrder o;
  EmpireCache emp(g);
  for (std::size_t v = 0; v < g.node_count(); ++v)
    o.kingdoms.push_back(nodes_only(g, kingdom_all(g, static_cast<int>(v), emp)));
  return o;
}

bool is_antisymmetric(const KingdomOrder& o) {
  for (std::size_t a = 0; a < o.kingdoms.size(); ++a)
    for (std::size_t b = a + 1; b < o.kingdoms.size(); ++b)
      if (o.kingdoms[b][a] && o.kingdoms[a][b]) return false;
  return true;
}

// ------------------------------------------------------------------- gates

namespace {

// Whether vertex x lies in the kingdom of some root other than `except`.
bool below_some_root(const DepGraph& g, const Forest& f, int x, int except_root, EmpireCache& emp) {
  for (std::size_t r = 0; r < f.roots.size(); ++r) {
    if (static_cast<int>(r) == except_root) continue;
    int rv = g.vertex(f.roots[r].id);
    if (rv == x) continue;
    if (kingdom_all(g, rv, emp)[x]) return true;
  }
  return false;
}

}  // namespace

std::vector<Gate> gates(const Forest& f) {
  std::vector<Gate> invertible, eps, cuts;
  DepGraph g = dep_graph(f);
  EmpireCache emp(g);
  for (std::size_t r = 0; r < f.roots.size(); ++r) {
    const AeTerm& t = f.roots[r];
    int pos = static_cast<int>(r);
    switch (t.kind) {
      case NodeKind::Alpha:
        invertible.push_back({Gate::Alpha, pos, t.id, {}, {}});
        break;
      case NodeKind::Leaf:
        if (t.leaf.size() >= 2) invertible.push_back({Gate::Leaf, pos, t.id, {}, {}});
        break;
      case NodeKind::Sum:
        if (t.kids.size() >= 2) {
          invertible.push_back({Gate::Sum, pos, t.id, {}, {}});
        } else {
          // Expose the witness as a root and ask whether it is maximal.
          Forest h = f;
          AeTerm w = h.roots[r].kids[0];
          h.roots[r] = std::move(w);
          DepGraph gh = dep_graph(h);
          EmpireCache eh(gh);
          int wv = gh.vertex(h.roots[r].id);
          if (!below_some_root(gh, h, wv, pos, eh)) eps.push_back({Gate::Eps, pos, t.id, {}, {}});
        }
        break;
      case NodeKind::Cut: {
        int cv = g.vertex(t.id);
        if (below_some_root(g, f, cv, pos, emp)) break;
        Gate gt{Gate::Cut, pos, t.id, {}, {}};
        const auto& el = emp.get(g.vertex(t.kids[0].id));
        const auto& er = emp.get(g.vertex(t.kids[1].id));
        bool ok = true;
        for (std::size_t q = 0; q < f.roots.size(); ++q) {
          if (q == r) continue;
          int qv = g.vertex(f.roots[q].id);
          if (el[qv])
            gt.left_context.push_back(static_cast<int>(q));
          else if (er[qv])
            gt.right_context.push_back(static_cast<int>(q));
          else
            ok = false;
        }
        if (ok) cuts.push_back(std::move(gt));
        break;
      }
      case NodeKind::Eps:
        break;
    }
  }
  auto by_id = [](const Gate& a, const Gate& b) { return a.id < b.id; };
  std::sort(invertible.begin(), invertible.end(), by_id);
  std::sort(eps.begin(), eps.end(), by_id);
  std::sort(cuts.begin(), cuts.end(), by_id);
  std::vector<Gate> out = invertible;
  out.insert(out.end(), eps.begin(), eps.end());
  out.insert(out.end(), cuts.begin(), cuts.end());
  return out;
}

bool is_tautology_conclusion(const Forest& f) {
  if (f.roots.empty()) return false;
  std::string index;
  for (const auto& r : f.roots) {
    if (r.kind != NodeKind::Leaf || r.leaf.size() != 1) return false;
    if (index.empty()) index = *r.leaf.begin();
    if (*r.leaf.begin() != index) return false;
  }
  return true;
}

// ------------------------------------------------------- sequentialization

namespace {

Forest sub_forest(const Forest& f, const std::vector<int>& keep) {
  Forest h;
  h.next_id = f.next_id;
  for (int q : keep) h.roots.push_back(f.roots[q]);
  return h;
}

std::vector<int> all_but(const Forest& f, int pos) {
  std::vector<int> keep;
  for (std::size_t q = 0; q < f.roots.size(); ++q)
    if (static_cast<int>(q) != pos) keep.push_back(static_cast<int>(q));
  return keep;
}

Proof seq(const Forest& f, int depth) {
  if (depth > 100000) throw std::runtime_error("sequentialization does not terminate");
  Proof p;
  p.conclusion = f;
  auto gs = gates(f);
  if (gs.empty()) {
    if (!is_tautology_conclusion(f)) throw std::runtime_error("not a net: no gate and not a tautology conclusion");
    p.rule = Rule::Taut;
    p.index = *f.roots[0].leaf.begin();
    return p;
  }
  const Gate& gt = gs.front();
  const AeTerm& root = f.roots[gt.root];
  p.principal = gt.root;
  switch (gt.kind) {
    case Gate::Alpha: {
      p.rule = Rule::ForallR;
      p.eigen = root.eigen;
      Forest h = sub_forest(f, all_but(f, gt.root));
      h.roots.push_back(root.kids[0]);
      p.active = {static_cast<int>(h.roots.size()) - 1};
      p.premises.push_back(seq(h, depth + 1));
      break;
    }
    case Gate::Eps: {
      p.rule = Rule::ExistsR;
      const AeTerm& w = root.kids[0];
      p.term = w.witness;
      Forest h = sub_forest(f, all_but(f, gt.root));
      h.roots.push_back(w.kids[0]);
      p.active = {static_cast<int>(h.roots.size()) - 1};
      p.premises.push_back(seq(h, depth + 1));
      break;
    }
    case Gate::Sum: {
      p.rule = Rule::CExists;
      Forest h = sub_forest(f, all_but(f, gt.root));
      AeTerm first = AeTerm::make_sum({root.kids[0]});
      first.id = h.next_id++;
      first.type = root.type;
      AeTerm rest = root;
      rest.kids.erase(rest.kids.begin());
      h.roots.push_back(std::move(first));
      h.roots.push_back(std::move(rest));
      int n = static_cast<int>(h.roots.size());
      p.active = {n - 2, n - 1};
      p.premises.push_back(seq(h, depth + 1));
      break;
    }
    case Gate::Leaf: {
      p.rule = Rule::CProp;
      Forest h = sub_forest(f, all_but(f, gt.root));
      AeTerm first = AeTerm::make_leaf({*root.leaf.begin()});
      first.id = h.next_id++;
      first.type = root.type;
      AeTerm rest = root;
      rest.leaf.erase(rest.leaf.begin());
      h.roots.push_back(std::move(first));
      h.roots.push_back(std::move(rest));
      int n = static_cast<int>(h.roots.size());
      p.active = {n - 2, n - 1};
      p.premises.push_back(seq(h, depth + 1));
      break;
    }
    case Gate::Cut: {
      p.rule = Rule::Cut;
      Forest l = sub_forest(f, gt.left_context);
      l.roots.push_back(root.kids[0]);
      Forest r = sub_forest(f, gt.right_context);
      r.roots.push_back(root.kids[1]);
      p.active = {static_cast<int>(l.roots.size()) - 1, static_cast<int>(r.roots.size()) - 1};
      p.premises.push_back(seq(l, depth + 1));
      p.premises.push_back(seq(r, depth + 1));
      break;
    }
  }
  return p;
}

}  // namespace

Proof sequentialize(const Forest& f, const Theory& th) {
  (void)th;
  Forest h = f;
  annotate(h);
  auto v = check_annotated_sequent(h);
  if (!v.empty()) throw std::runtime_error("not an annotated sequent: " + v.front().message);
  auto acc = acc_check(h);
  if (!acc.ok) throw std::runtime_error("not a net: " + acc.reason);
  return seq(h, 0);
}

// --------------------------------------------------------------------- DOT

namespace {
std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string node_label(const AeTerm& t) {
  switch (t.kind) {
    case NodeKind::Leaf: {
      std::string s = "{";
      bool first = true;
      for (const auto& i : t.leaf) {
        s += (first ? "" : ",") + i;
        first = false;
      }
      return s + "}";
    }
    case NodeKind::Alpha:
      return "a[" + t.eigen + "]";
    case NodeKind::Eps:
      return "e[" + render(t.witness) + "]";
    case NodeKind::Sum:
      return "+";
    case NodeKind::Cut:
      return "><";
  }
  return {};
}
}  // namespace

std::string to_dot(const Forest& f, const DotOptions& opt) {
  DepGraph g = dep_graph(f);
  std::ostringstream os;
  os << "digraph herbnet {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  for (std::size_t v = 0; v < g.node_count(); ++v)
    os << "  n" << g.node_ids[v] << " [label=\"" << dot_escape(node_label(*g.terms[v])) << "\"];\n";
  for (std::size_t k = 0; k < g.index_names.size(); ++k)
    os << "  i" << k << " [label=\"" << dot_escape(g.index_names[k]) << "\", shape=ellipse, color=red, fontcolor=red];\n";
  if (opt.show_types)
    for (std::size_t r = 0; r < f.roots.size(); ++r)
      os << "  t" << r << " [label=\"" << dot_escape(render_type(f.roots[r].type)) << "\"];\n";
  auto name = [&](int v) {
    if (g.is_index(v)) return "i" + std::to_string(v - static_cast<int>(g.node_count()));
    return "n" + std::to_string(g.node_ids[v]);
  };
  for (const auto& e : g.edges) {
    os << "  " << name(e.from) << " -> " << name(e.to);
    if (e.kind == EdgeKind::Tree)
      os << " [color=black];\n";
    else
      os << " [color=red, constraint=false, splines=curved];\n";
  }
  if (opt.show_types)
    for (std::size_t r = 0; r < f.roots.size(); ++r)
      os << "  n" << f.roots[r].id << " -> t" << r << " [color=black];\n";
  os << "}\n";
  return os.str();
}

}  // namespace herbnet
