#include "herbnet/sequent.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace herbnet {

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::Taut:
      return "Taut";
    case Rule::ForallR:
      return "ForallR";
    case Rule::ExistsR:
      return "ExistsR";
    case Rule::CExists:
      return "CExists";
    case Rule::CProp:
      return "CProp";
    case Rule::Cut:
      return "Cut";
  }
  return "?";
}

namespace {

using Multiset = std::vector<std::string>;

Multiset roots_except(const Forest& f, const std::vector<int>& skip) {
  Multiset out;
  for (std::size_t i = 0; i < f.roots.size(); ++i)
    if (std::find(skip.begin(), skip.end(), static_cast<int>(i)) == skip.end())
      out.push_back(canonical_root(f.roots[i]));
  std::sort(out.begin(), out.end());
  return out;
}

std::string path_text(const std::vector<int>& path) {
  std::string s = "root";
  for (int k : path) s += "." + std::to_string(k);
  return s;
}

struct Checker {
  const Theory& th;
  const GroundingConfig& cfg;
  std::vector<ProofViolation> out;
  std::map<std::string, std::vector<std::vector<int>>> taut_indices;
  std::map<std::string, std::vector<std::vector<int>>> eigens;

  void fail(const std::string& kind, const std::string& msg, const std::vector<int>& path) {
    out.push_back({kind, msg + " at " + path_text(path), path});
  }

  bool in_range(const Forest& f, int pos) const { return pos >= 0 && pos < static_cast<int>(f.roots.size()); }

  void check(const Proof& p, std::vector<int>& path) {
    Forest concl = p.conclusion;
    try {
      annotate(concl);
    } catch (const TypeError& e) {
      fail("type", std::string("ill-typed conclusion: ") + e.what(), path);
      return;
    }
    std::vector<Forest> prem;
    for (const auto& q : p.premises) {
      Forest h = q.conclusion;
      try {
        annotate(h);
      } catch (const TypeError& e) {
        fail("type", std::string("ill-typed premise: ") + e.what(), path);
        return;
      }
      prem.push_back(std::move(h));
    }
    check_rule(p, concl, prem, path);
    for (std::size_t k = 0; k < p.premises.size(); ++k) {
      path.push_back(static_cast<int>(k));
      check(p.premises[k], path);
      path.pop_back();
    }
  }

  void check_rule(const Proof& p, const Forest& c, const std::vector<Forest>& prem, const std::vector<int>& path) {
    std::size_t want = p.rule == Rule::Taut ? 0 : p.rule == Rule::Cut ? 2 : 1;
    if (prem.size() != want) {
      fail("rule", rule_name(p.rule) + " needs " + std::to_string(want) + " premises", path);
      return;
    }
    if (p.rule == Rule::Taut) {
      std::vector<Qff> ds;
      for (const auto& r : c.roots) {
        if (r.kind != NodeKind::Leaf || r.leaf.size() != 1 || *r.leaf.begin() != p.index) {
          fail("rule", "tautology conclusion must consist of leaves {" + p.index + "}", path);
          return;
        }
        ds.push_back(r.type.f.matrix);
      }
      taut_indices[p.index].push_back(path);
      auto res = is_tautology(ds, th, cfg);
      if (!res.valid()) fail("tautology", "tautology " + p.index + " is not valid", path);
      return;
    }
    if (!in_range(c, p.principal)) {
      fail("rule", "principal formula out of range", path);
      return;
    }
    const AeTerm& pr = c.roots[p.principal];
    Multiset rest_c = roots_except(c, {p.principal});
    if (p.rule == Rule::Cut) {
      if (p.active.size() != 2 || !in_range(prem[0], p.active[0]) || !in_range(prem[1], p.active[1]) ||
          pr.kind != NodeKind::Cut) {
        fail("rule", "malformed cut", path);
        return;
      }
      if (canonical_root(pr.kids[0]) != canonical_root(prem[0].roots[p.active[0]]) ||
          canonical_root(pr.kids[1]) != canonical_root(prem[1].roots[p.active[1]])) {
        fail("rule", "cut formulas do not match the premises", path);
        return;
      }
      Multiset rest_p = roots_except(prem[0], {p.active[0]});
      Multiset r1 = roots_except(prem[1], {p.active[1]});
      rest_p.insert(rest_p.end(), r1.begin(), r1.end());
      std::sort(rest_p.begin(), rest_p.end());
      if (rest_p != rest_c) fail("rule", "cut context does not match the premises", path);
      return;
    }
    const Forest& h = prem[0];
    for (int a : p.active)
      if (!in_range(h, a)) {
        fail("rule", "active formula out of range", path);
        return;
      }
    Multiset rest_p = roots_except(h, p.active);
    if (rest_p != rest_c) fail("rule", rule_name(p.rule) + " context does not match the premise", path);
    switch (p.rule) {
      case Rule::ForallR: {
        if (pr.kind != NodeKind::Alpha || pr.eigen != p.eigen || p.active.size() != 1) {
          fail("rule", "ForallR principal must be a[" + p.eigen + "]", path);
          return;
        }
        if (canonical_root(pr.kids[0]) != canonical_root(h.roots[p.active[0]]))
          fail("rule", "ForallR premise does not match", path);
        eigens[p.eigen].push_back(path);
        return;
      }
      case Rule::ExistsR: {
        if (pr.kind != NodeKind::Sum || pr.kids.size() != 1 || pr.kids[0].witness != p.term ||
            p.active.size() != 1) {
          fail("rule", "ExistsR principal must be (e[" + render(p.term) + "].t)", path);
          return;
        }
        if (canonical_root(pr.kids[0].kids[0]) != canonical_root(h.roots[p.active[0]]))
          fail("rule", "ExistsR premise does not match", path);
        return;
      }
      case Rule::CExists: {
        if (pr.kind != NodeKind::Sum || p.active.size() != 2) {
          fail("rule", "CExists principal must be a sum", path);
          return;
        }
        const AeTerm& a = h.roots[p.active[0]];
        const AeTerm& b = h.roots[p.active[1]];
        if (a.kind != NodeKind::Sum || b.kind != NodeKind::Sum || !alpha_equal(a.type.f, pr.type.f) ||
            !alpha_equal(b.type.f, pr.type.f)) {
          fail("rule", "CExists premises must be sums of the same type", path);
          return;
        }
        AeTerm joined = a;
        joined.kids.insert(joined.kids.end(), b.kids.begin(), b.kids.end());
        joined.type = pr.type;
        if (canonical_root(joined) != canonical_root(pr)) fail("rule", "CExists sums do not add up", path);
        return;
      }
      case Rule::CProp: {
        if (pr.kind != NodeKind::Leaf || p.active.size() != 2) {
          fail("rule", "CProp principal must be a leaf", path);
          return;
        }
        const AeTerm& a = h.roots[p.active[0]];
        const AeTerm& b = h.roots[p.active[1]];
        if (a.kind != NodeKind::Leaf || b.kind != NodeKind::Leaf || a.type.f != pr.type.f || b.type.f != pr.type.f) {
          fail("rule", "CProp premises must be leaves of the same type", path);
          return;
        }
        IndexSet u = a.leaf;
        u.insert(b.leaf.begin(), b.leaf.end());
        if (u != pr.leaf) fail("rule", "CProp index sets do not add up", path);
        return;
      }
      default:
        return;
    }
  }
};

void flatten(const Proof& p, std::vector<int>& path, std::vector<std::pair<const Proof*, std::vector<int>>>& out) {
  out.emplace_back(&p, path);
  for (std::size_t k = 0; k < p.premises.size(); ++k) {
    path.push_back(static_cast<int>(k));
    flatten(p.premises[k], path, out);
    path.pop_back();
  }
}

bool has_prefix(const std::vector<int>& v, const std::vector<int>& pre) {
  return v.size() >= pre.size() && std::equal(pre.begin(), pre.end(), v.begin());
}

}  // namespace

ProofCheck check_proof(const Proof& p, const Theory& th, const GroundingConfig& cfg) {
  Checker ck{th, cfg, {}, {}, {}};
  std::vector<int> path;
  ck.check(p, path);
  for (const auto& [i, paths] : ck.taut_indices)
    if (paths.size() > 1) ck.fail("strictness-i", "tautology index " + i + " used twice", paths[1]);
  for (const auto& [a, paths] : ck.eigens)
    if (paths.size() > 1) ck.fail("strictness-ii", "eigenvariable " + a + " used twice", paths[1]);

  std::vector<std::pair<const Proof*, std::vector<int>>> nodes;
  flatten(p, path, nodes);
  for (const auto& [n, npath] : nodes) {
    if (n->rule != Rule::ForallR) continue;
    std::vector<int> above = npath;
    above.push_back(0);
    bool reported = false;
    for (const auto& [m, mpath] : nodes) {
      if (reported) break;
      if (has_prefix(mpath, above)) continue;
      for (const auto& r : m->conclusion.roots) {
        if (r.type.kind == NetType::CutType) continue;
        if (free_vars(r.type.f).count(n->eigen)) {
          ck.fail("strictness-iii", "eigenvariable " + n->eigen + " free in a sequent below its rule", mpath);
          reported = true;
          break;
        }
      }
    }
  }

  ProofCheck res;
  res.violations = std::move(ck.out);
  res.ok = res.violations.empty();
  res.conclusion = p.conclusion;
  try {
    annotate(res.conclusion);
  } catch (const TypeError&) {
  }
  return res;
}

namespace {
void render_into(const Proof& p, int depth, std::string& out) {
  for (std::size_t k = 0; k < p.premises.size(); ++k) render_into(p.premises[k], depth + 1, out);
  out += std::string(2 * depth, ' ') + rule_name(p.rule);
  if (p.rule == Rule::Taut) out += " " + p.index;
  if (p.rule == Rule::ForallR) out += " " + p.eigen;
  if (p.rule == Rule::ExistsR) out += " " + render(p.term);
  out += "  |-  ";
  for (std::size_t i = 0; i < p.conclusion.roots.size(); ++i) {
    if (i) out += ", ";
    out += render_root(p.conclusion.roots[i]);
  }
  out += "\n";
}
}  // namespace

std::string render_proof(const Proof& p) {
  std::string out;
  render_into(p, 0, out);
  return out;
}

std::size_t proof_size(const Proof& p) {
  std::size_t n = 1;
  for (const auto& q : p.premises) n += proof_size(q);
  return n;
}

std::vector<const Proof*> spine(const Proof& p) {
  std::vector<const Proof*> out;
  for (const Proof* q = &p;; q = &q->premises[0]) {
    out.push_back(q);
    if (q->premises.empty()) break;
  }
  return out;
}

namespace {
std::string type_key(const Formula& f) { return render(canonical(f)); }

Multiset types_of(const Forest& f) {
  Multiset out;
  for (const auto& r : f.roots)
    if (r.type.kind == NetType::Logical) out.push_back(type_key(r.type.f));
  std::sort(out.begin(), out.end());
  return out;
}

bool take(Multiset& m, const std::string& x) {
  auto it = std::find(m.begin(), m.end(), x);
  if (it == m.end()) return false;
  m.erase(it);
  return true;
}

bool shape_ok(const Proof& p, std::string* why) {
  auto bad = [&](const std::string& msg) {
    if (why) *why = rule_name(p.rule) + ": " + msg;
    return false;
  };
  Multiset c = types_of(p.conclusion);
  if (p.rule == Rule::Taut) {
    for (const auto& r : p.conclusion.roots)
      if (!r.type.f.is_qff()) return bad("non-propositional formula in an axiom");
  } else if (p.rule == Rule::Cut) {
    if (p.premises.size() != 2) return bad("cut needs two premises");
    Multiset a = types_of(p.premises[0].conclusion), b = types_of(p.premises[1].conclusion);
    const auto& cut = p.conclusion.roots.at(p.principal);
    if (!take(a, type_key(cut.type.f)) || !take(b, type_key(dual(cut.type.f)))) return bad("cut formula missing");
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    if (a != c) return bad("context mismatch");
  } else {
    if (p.premises.size() != 1) return bad("needs one premise");
    Multiset h = types_of(p.premises[0].conclusion);
    const Formula& main = p.conclusion.roots.at(p.principal).type.f;
    if (!take(c, type_key(main))) return bad("principal formula missing");
    if (p.rule == Rule::ForallR || p.rule == Rule::ExistsR) {
      Term m = p.rule == Rule::ForallR ? Term::var(p.eigen) : p.term;
      if (!take(h, type_key(instantiate(main, m)))) return bad("active formula missing");
    } else {
      if (!take(h, type_key(main)) || !take(h, type_key(main))) return bad("contracted formulas missing");
    }
    if (h != c) return bad("context mismatch");
  }
  for (const auto& q : p.premises)
    if (!shape_ok(q, why)) return false;
  return true;
}
}  // namespace

bool check_shape(const Proof& p, std::string* why) { return shape_ok(p, why); }

}  // namespace herbnet
