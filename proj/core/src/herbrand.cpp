#include "herbnet/herbrand.hpp"

#include <algorithm>
#include <functional>

#include "herbnet/net.hpp"
#include "herbnet/reduce.hpp"
#include "herbnet/sequent.hpp"

namespace herbnet {

GeneralFormula GeneralFormula::leaf(Qff q) {
  GeneralFormula g;
  g.matrix = std::move(q);
  return g;
}

GeneralFormula GeneralFormula::conj(GeneralFormula a, GeneralFormula b) {
  GeneralFormula g;
  g.kind = And;
  g.kids = {std::move(a), std::move(b)};
  return g;
}

GeneralFormula GeneralFormula::disj(GeneralFormula a, GeneralFormula b) {
  GeneralFormula g;
  g.kind = Or;
  g.kids = {std::move(a), std::move(b)};
  return g;
}

GeneralFormula GeneralFormula::forall(std::string x, GeneralFormula body) {
  GeneralFormula g;
  g.kind = Forall;
  g.var = std::move(x);
  g.kids = {std::move(body)};
  return g;
}

GeneralFormula GeneralFormula::exists(std::string x, GeneralFormula body) {
  GeneralFormula g;
  g.kind = Exists;
  g.var = std::move(x);
  g.kids = {std::move(body)};
  return g;
}

bool GeneralFormula::operator==(const GeneralFormula& o) const {
  return kind == o.kind && var == o.var && (kind != Matrix || matrix == o.matrix) && kids == o.kids;
}

namespace {

// Rendered quantifier-free parts carry their own parentheses.
bool simple(const GeneralFormula& g) { return g.kind == GeneralFormula::Matrix; }

std::string operand(const GeneralFormula& g, GeneralFormula::Kind parent) {
  if (simple(g) || g.kind == parent) return render(g);
  return "(" + render(g) + ")";
}

}  // namespace

std::string render(const GeneralFormula& g) {
  switch (g.kind) {
    case GeneralFormula::Matrix:
      return render(g.matrix);
    case GeneralFormula::Or:
      return operand(g.kids[0], g.kind) + " | " + operand(g.kids[1], g.kind);
    case GeneralFormula::And:
      return operand(g.kids[0], g.kind) + " & " + operand(g.kids[1], g.kind);
    case GeneralFormula::Forall:
    case GeneralFormula::Exists: {
      const GeneralFormula& b = g.kids[0];
      bool bare = simple(b) || b.kind == GeneralFormula::Forall || b.kind == GeneralFormula::Exists;
      return std::string(g.kind == GeneralFormula::Forall ? "forall " : "exists ") + g.var + ". " +
             (bare ? render(b) : "(" + render(b) + ")");
    }
  }
  return "";
}

GeneralFormula from_prenex(const Formula& a) {
  GeneralFormula g = GeneralFormula::leaf(a.matrix);
  for (auto it = a.prefix.rbegin(); it != a.prefix.rend(); ++it)
    g = it->q == Quant::Forall ? GeneralFormula::forall(it->var, std::move(g))
                               : GeneralFormula::exists(it->var, std::move(g));
  return g;
}

std::vector<std::string> binders(const GeneralFormula& g) {
  std::vector<std::string> out;
  std::function<void(const GeneralFormula&)> go = [&](const GeneralFormula& h) {
    if (h.kind == GeneralFormula::Forall || h.kind == GeneralFormula::Exists) out.push_back(h.var);
    for (const auto& k : h.kids) go(k);
  };
  go(g);
  return out;
}

std::set<std::string> free_vars(const GeneralFormula& g) {
  switch (g.kind) {
    case GeneralFormula::Matrix:
      return free_vars(g.matrix);
    case GeneralFormula::Forall:
    case GeneralFormula::Exists: {
      auto s = free_vars(g.kids[0]);
      s.erase(g.var);
      return s;
    }
    default: {
      auto s = free_vars(g.kids[0]);
      auto t = free_vars(g.kids[1]);
      s.insert(t.begin(), t.end());
      return s;
    }
  }
}

Qff strip_quantifiers(const GeneralFormula& g) {
  switch (g.kind) {
    case GeneralFormula::Matrix:
      return g.matrix;
    case GeneralFormula::Or:
      return Qff::disj(strip_quantifiers(g.kids[0]), strip_quantifiers(g.kids[1]));
    case GeneralFormula::And:
      return Qff::conj(strip_quantifiers(g.kids[0]), strip_quantifiers(g.kids[1]));
    default:
      return strip_quantifiers(g.kids[0]);
  }
}

namespace {

void rename_free_in(GeneralFormula& g, const std::string& x, const Term& m) {
  switch (g.kind) {
    case GeneralFormula::Matrix:
      g.matrix = subst(g.matrix, x, m);
      return;
    case GeneralFormula::Forall:
    case GeneralFormula::Exists:
      if (g.var == x) return;
      break;
    default:
      break;
  }
  for (auto& k : g.kids) rename_free_in(k, x, m);
}

}  // namespace

GeneralFormula rename_apart(const GeneralFormula& g, NameSupply& supply) {
  auto fv = free_vars(g);
  supply.reserve(fv.begin(), fv.end());
  std::set<std::string> seen(fv.begin(), fv.end());
  std::function<void(GeneralFormula&)> go = [&](GeneralFormula& h) {
    if ((h.kind == GeneralFormula::Forall || h.kind == GeneralFormula::Exists) && !seen.insert(h.var).second) {
      std::string y = supply.fresh(h.var);
      seen.insert(y);
      rename_free_in(h.kids[0], h.var, Term::var(y));
      h.var = y;
    }
    for (auto& k : h.kids) go(k);
  };
  GeneralFormula out = g;
  for (const auto& b : binders(g)) supply.reserve(b);
  go(out);
  return out;
}

std::map<int, std::string> label_witnesses(const AeTerm& t, const std::set<std::string>& avoid) {
  std::map<int, std::string> out;
  int next = 1;
  std::function<void(const AeTerm&)> go = [&](const AeTerm& n) {
    for (const auto& k : n.kids) go(k);
    if (n.kind != NodeKind::Eps) return;
    std::string u;
    do u = "u" + std::to_string(next++);
    while (avoid.count(u));
    out[n.id] = u;
  };
  go(t);
  return out;
}

GeneralFormula deep(const AeTerm& t, const Formula& type, const std::map<int, std::string>& labels) {
  switch (t.kind) {
    case NodeKind::Leaf:
      if (!type.is_qff()) throw TypeError("leaf at a quantified type", t.id);
      return GeneralFormula::leaf(type.matrix);
    case NodeKind::Alpha:
      if (!type.starts_forall()) throw TypeError("alpha node at a non-universal type", t.id);
      return GeneralFormula::forall(t.eigen, deep(t.kids[0], instantiate(type, Term::var(t.eigen)), labels));
    case NodeKind::Sum: {
      if (!type.starts_exists()) throw TypeError("sum at a non-existential type", t.id);
      GeneralFormula g = deep(t.kids[0], type, labels);
      for (std::size_t k = 1; k < t.kids.size(); ++k) g = GeneralFormula::disj(std::move(g), deep(t.kids[k], type, labels));
      return g;
    }
    case NodeKind::Eps: {
      auto it = labels.find(t.id);
      if (it == labels.end()) throw PreconditionError("witness " + std::to_string(t.id) + " has no label");
      return GeneralFormula::exists(it->second, deep(t.kids[0], instantiate(type, Term::var(it->second)), labels));
    }
    case NodeKind::Cut:
      throw PreconditionError("cut " + std::to_string(t.id) + " in an expansion tree");
  }
  return {};
}

namespace {

// Quantifier variable -> variables of the quantifiers above it.
void ancestors(const GeneralFormula& g, std::vector<std::string>& above,
               std::map<std::string, std::pair<Quant, std::vector<std::string>>>& out) {
  bool q = g.kind == GeneralFormula::Forall || g.kind == GeneralFormula::Exists;
  if (q) {
    out[g.var] = {g.kind == GeneralFormula::Forall ? Quant::Forall : Quant::Exists, above};
    above.push_back(g.var);
  }
  for (const auto& k : g.kids) ancestors(k, above, out);
  if (q) above.pop_back();
}

std::string check_distinct(const GeneralFormula& g) {
  auto bs = binders(g);
  auto fv = free_vars(g);
  std::set<std::string> seen;
  for (const auto& b : bs) {
    if (!seen.insert(b).second) return "variable " + b + " is bound twice";
    if (fv.count(b)) return "bound variable " + b + " also occurs free";
  }
  return "";
}

// Empty when `sched` is a valid prefix order for g.
std::string check_schedule(const GeneralFormula& g, const std::vector<Binder>& sched) {
  std::map<std::string, std::pair<Quant, std::vector<std::string>>> anc;
  std::vector<std::string> above;
  ancestors(g, above, anc);
  if (sched.size() != anc.size()) return "prefix has " + std::to_string(sched.size()) + " quantifiers, expected " +
                                         std::to_string(anc.size());
  std::set<std::string> done;
  for (const auto& b : sched) {
    auto it = anc.find(b.var);
    if (it == anc.end()) return "prefix variable " + b.var + " is not bound in the expansion";
    if (done.count(b.var)) return "prefix variable " + b.var + " repeated";
    if (it->second.first != b.q) return "prefix variable " + b.var + " has the wrong quantifier";
    for (const auto& a : it->second.second)
      if (!done.count(a)) return "quantifier on " + b.var + " pulled before the enclosing " + a;
    done.insert(b.var);
  }
  return "";
}

}  // namespace

Formula prenexify(const GeneralFormula& g, const std::vector<std::string>& schedule) {
  std::string why = check_distinct(g);
  if (!why.empty()) throw PreconditionError(why);
  std::map<std::string, std::pair<Quant, std::vector<std::string>>> anc;
  std::vector<std::string> above;
  ancestors(g, above, anc);
  Formula out;
  for (const auto& v : schedule) {
    auto it = anc.find(v);
    if (it == anc.end()) throw PreconditionError("variable " + v + " is not bound in the formula");
    out.prefix.push_back({it->second.first, v});
  }
  why = check_schedule(g, out.prefix);
  if (!why.empty()) throw PreconditionError(why);
  out.matrix = strip_quantifiers(g);
  return out;
}

Formula prenexify(const GeneralFormula& g) { return prenexify(g, binders(g)); }

HerbrandProof extract_herbrand_proof(const Forest& f, const Theory& th, const GroundingConfig& cfg) {
  if (f.roots.size() != 1) throw PreconditionError("extraction needs exactly one root");
  if (!cut_free(f)) throw PreconditionError("extraction needs a cut-free net; normalize first");
  const AeTerm& root = f.roots[0];
  if (root.type.kind != NetType::Logical) throw PreconditionError("the root is not an expansion tree");
  NetReport rep = check_net(f, th, {}, cfg);
  if (!rep.ok)
    throw PreconditionError("not a Herbrand net: " + (rep.failures.empty() ? std::string("?") : rep.failures.front()));

  auto labels = label_witnesses(root, names(f));
  HerbrandProof hp;
  hp.expansion = deep(root, root.type.f, labels);

  Proof p = sequentialize(f, th);
  std::vector<std::string> order;
  for (const Proof* step : spine(p)) {
    if (step->rule == Rule::ForallR) {
      order.push_back(step->eigen);
      hp.sigma.push_back(Term::var(step->eigen));
    } else if (step->rule == Rule::ExistsR) {
      const AeTerm& w = step->conclusion.roots[step->principal].kids[0];
      order.push_back(labels.at(w.id));
      hp.sigma.push_back(w.witness);
    }
  }
  hp.prenexification = prenexify(hp.expansion, order);
  return hp;
}

namespace {

// Whether g is an expansion of a, up to the names of bound variables.
std::string check_expansion(const GeneralFormula& g, const Formula& a) {
  if (a.is_qff()) {
    if (!binders(g).empty()) return "quantifier where the formula has none";
    if (strip_quantifiers(g) != a.matrix) return render(g) + " does not match " + render(a.matrix);
    return "";
  }
  if (a.starts_forall()) {
    if (g.kind != GeneralFormula::Forall) return render(g) + " should be universal";
    return check_expansion(g.kids[0], instantiate(a, Term::var(g.var)));
  }
  std::vector<const GeneralFormula*> copies;
  std::function<bool(const GeneralFormula&)> collect = [&](const GeneralFormula& h) {
    if (h.kind == GeneralFormula::Or) return collect(h.kids[0]) && collect(h.kids[1]);
    if (h.kind != GeneralFormula::Exists) return false;
    copies.push_back(&h);
    return true;
  };
  if (!collect(g)) return render(g) + " is not a disjunction of copies of " + render(a);
  for (const auto* c : copies) {
    std::string why = check_expansion(c->kids[0], instantiate(a, Term::var(c->var)));
    if (!why.empty()) return why;
  }
  return "";
}

}  // namespace

Qff herbrand_instance(const HerbrandProof& hp) {
  Qff q = hp.prenexification.matrix;
  const auto& pre = hp.prenexification.prefix;
  for (std::size_t k = pre.size(); k-- > 0;)
    if (k < hp.sigma.size()) q = subst(q, pre[k].var, hp.sigma[k]);
  return q;
}

HerbrandCheck verify_herbrand_proof(const Formula& a, const HerbrandProof& hp, const Theory& th,
                                    const GroundingConfig& cfg) {
  HerbrandCheck r;
  auto fail = [&](const char* clause, std::string msg) {
    r.clause = clause;
    r.message = std::move(msg);
    return r;
  };
  if (!free_vars(a).empty()) return fail("expansion", "the formula is not closed");
  std::string why = check_expansion(hp.expansion, a);
  if (!why.empty()) return fail("expansion", why);

  why = check_distinct(hp.expansion);
  if (!why.empty()) return fail("prenexification", why);
  why = check_schedule(hp.expansion, hp.prenexification.prefix);
  if (!why.empty()) return fail("prenexification", why);
  if (hp.prenexification.matrix != strip_quantifiers(hp.expansion))
    return fail("prenexification", "matrix differs from the expansion with its quantifiers removed");

  const auto& pre = hp.prenexification.prefix;
  if (hp.sigma.size() != pre.size())
    return fail("witness", "substitution has " + std::to_string(hp.sigma.size()) + " terms for " +
                               std::to_string(pre.size()) + " quantifiers");
  std::set<std::string> universal;
  for (std::size_t k = 0; k < pre.size(); ++k) {
    const Term& m = hp.sigma[k];
    if (pre[k].q == Quant::Forall) {
      if (!(m == Term::var(pre[k].var))) return fail("witness", "term " + std::to_string(k + 1) + " must be " + pre[k].var);
      universal.insert(pre[k].var);
      continue;
    }
    for (const auto& v : free_vars(m))
      if (!universal.count(v))
        return fail("dependency", "witness " + render(m) + " for " + pre[k].var + " mentions " + v +
                                      ", which is not an earlier universal variable");
  }

  TautResult t = is_tautology({herbrand_instance(hp)}, th, cfg);
  if (!t.valid())
    return fail("tautology", t.status == TautStatus::Unknown ? "undecided: " + t.reason : "instance is not valid");
  r.ok = true;
  return r;
}

}  // namespace herbnet
