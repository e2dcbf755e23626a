#include "herbnet/taut.hpp"

#include <algorithm>
#include <map>

namespace herbnet {

namespace {

bool term_order(const Term& a, const Term& b) {
  auto sa = term_size(a), sb = term_size(b);
  if (sa != sb) return sa < sb;
  return render(a) < render(b);
}

void sort_terms(std::vector<Term>& ts) {
  std::sort(ts.begin(), ts.end(), term_order);
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
}

// Clause database with a small DPLL solver.
class Solver {
 public:
  int atom(const Qff& a) {
    Qff key = Qff::atom(true, a.pred, a.args);
    auto it = atoms_.find(key);
    if (it != atoms_.end()) return it->second;
    int v = new_var();
    atoms_.emplace(key, v);
    return v;
  }

  // Returns a literal implying q (one-sided Tseitin; formulas are in NNF).
  int encode(const Qff& q) {
    if (q.kind == Qff::Atom) {
      int v = atom(q);
      return q.positive ? v : -v;
    }
    int a = encode(q.kids[0]);
    int b = encode(q.kids[1]);
    int v = new_var();
    if (q.kind == Qff::Or) {
      clauses_.push_back({-v, a, b});
    } else {
      clauses_.push_back({-v, a});
      clauses_.push_back({-v, b});
    }
    return v;
  }

  void assert_formula(const Qff& q) { clauses_.push_back({encode(q)}); }

  bool solve() {
    value_.assign(nvars_ + 1, 0);
    return dpll();
  }

  std::vector<std::pair<Qff, bool>> model() const {
    std::vector<std::pair<Qff, bool>> out;
    for (const auto& [a, v] : atoms_) out.emplace_back(a, value_[v] > 0);
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return render(x.first) < render(y.first); });
    return out;
  }

  std::size_t decisions = 0;
  std::size_t conflicts = 0;

 private:
  int new_var() { return ++nvars_; }

  int lit_value(int l) const {
    int v = value_[std::abs(l)];
    return l > 0 ? v : -v;
  }

  // Unit propagation to fixpoint; false on conflict.  Assigned variables are
  // appended to trail.
  bool propagate(std::vector<int>& trail) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& c : clauses_) {
        int unassigned = 0, last = 0;
        bool sat = false;
        for (int l : c) {
          int lv = lit_value(l);
          if (lv > 0) {
            sat = true;
            break;
          }
          if (lv == 0) {
            ++unassigned;
            last = l;
          }
        }
        if (sat) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          value_[std::abs(last)] = last > 0 ? 1 : -1;
          trail.push_back(std::abs(last));
          changed = true;
        }
      }
    }
    return true;
  }

  bool dpll() {
    std::vector<int> trail;
    if (!propagate(trail)) {
      ++conflicts;
      for (int v : trail) value_[v] = 0;
      return false;
    }
    int pick = 0;
    for (const auto& c : clauses_) {
      bool sat = false;
      int free_lit = 0;
      for (int l : c) {
        int lv = lit_value(l);
        if (lv > 0) {
          sat = true;
          break;
        }
        if (lv == 0 && !free_lit) free_lit = l;
      }
      if (!sat && free_lit) {
        pick = free_lit;
        break;
      }
    }
    if (!pick) return true;
    ++decisions;
    for (int phase : {pick, -pick}) {
      value_[std::abs(phase)] = phase > 0 ? 1 : -1;
      if (dpll()) return true;
      value_[std::abs(phase)] = 0;
    }
    for (int v : trail) value_[v] = 0;
    return false;
  }

  int nvars_ = 0;
  std::map<Qff, int> atoms_;
  std::vector<std::vector<int>> clauses_;
  std::vector<int> value_;
};

void instances_of(const Qff& axiom, const std::vector<std::string>& vars, std::size_t k, const std::vector<Term>& universe,
                  Qff current, std::vector<Qff>& out, std::size_t cap, bool& truncated) {
  if (out.size() >= cap) {
    truncated = true;
    return;
  }
  if (k == vars.size()) {
    out.push_back(std::move(current));
    return;
  }
  for (const auto& t : universe) {
    instances_of(axiom, vars, k + 1, universe, subst(current, vars[k], t), out, cap, truncated);
    if (truncated) return;
  }
}

}  // namespace

std::vector<Term> ground_terms(const Signature& sig, const std::set<Term>& seeds, int depth, bool extra_constant,
                               std::size_t cap) {
  std::set<Term> base;
  for (const auto& s : seeds) subterms(s, base);
  std::vector<Term> universe(base.begin(), base.end());
  if (universe.empty() && extra_constant) {
    auto cs = sig.constants();
    universe.push_back(Term::app(cs.empty() ? "c0" : cs.front()));
  }
  sort_terms(universe);
  for (int d = 0; d < depth; ++d) {
    std::vector<Term> next = universe;
    for (const auto& [f, n] : sig.functions) {
      if (n < 1) continue;
      std::vector<std::size_t> pick(n, 0);
      if (universe.empty()) break;
      for (;;) {
        std::vector<Term> args;
        for (auto p : pick) args.push_back(universe[p]);
        next.push_back(Term::app(f, std::move(args)));
        if (next.size() > cap) break;
        std::size_t k = 0;
        while (k < pick.size() && ++pick[k] == universe.size()) pick[k++] = 0;
        if (k == pick.size()) break;
      }
    }
    sort_terms(next);
    universe = std::move(next);
    if (universe.size() > cap) break;
  }
  return universe;
}

std::vector<Qff> ground_axiom_instances(const Theory& theory, const std::set<Term>& seed_terms, int depth,
                                        std::size_t cap, bool* truncated) {
  std::vector<Qff> out;
  bool trunc = false;
  if (theory.axioms.empty()) {
    if (truncated) *truncated = false;
    return out;
  }
  std::vector<Term> universe;
  bool have_universe = false;
  for (const auto& ax : theory.axioms) {
    auto fv = free_vars(ax);
    std::vector<std::string> vars(fv.begin(), fv.end());
    if (vars.empty()) {
      out.push_back(ax);
      continue;
    }
    if (!have_universe) {
      universe = ground_terms(theory.sig, seed_terms, depth, true);
      have_universe = true;
    }
    instances_of(ax, vars, 0, universe, ax, out, cap, trunc);
    if (trunc) break;
  }
  if (truncated) *truncated = trunc;
  return out;
}

bool satisfiable(const std::vector<Qff>& fs, std::vector<std::pair<Qff, bool>>* model, std::size_t* decisions,
                 std::size_t* conflicts) {
  Solver s;
  for (const auto& f : fs) s.assert_formula(f);
  bool sat = s.solve();
  if (sat && model) *model = s.model();
  if (decisions) *decisions = s.decisions;
  if (conflicts) *conflicts = s.conflicts;
  return sat;
}

bool evaluate(const Qff& q, const std::vector<std::pair<Qff, bool>>& assignment) {
  switch (q.kind) {
    case Qff::Atom: {
      Qff key = Qff::atom(true, q.pred, q.args);
      bool v = false;
      for (const auto& [a, b] : assignment)
        if (a == key) v = b;
      return q.positive ? v : !v;
    }
    case Qff::Or:
      return evaluate(q.kids[0], assignment) || evaluate(q.kids[1], assignment);
    case Qff::And:
      return evaluate(q.kids[0], assignment) && evaluate(q.kids[1], assignment);
  }
  return false;
}

TautResult is_tautology(const std::vector<Qff>& disjuncts, const Theory& theory, const GroundingConfig& cfg) {
  TautResult r;
  std::set<Term> seeds;
  for (const auto& d : disjuncts) subterms(d, seeds);
  int last = std::max(cfg.depth, cfg.max_depth);
  for (int depth = cfg.depth; depth <= last; ++depth) {
    bool truncated = false;
    auto inst = ground_axiom_instances(theory, seeds, depth, cfg.max_instances, &truncated);
    if (truncated) {
      r.status = TautStatus::Unknown;
      r.reason = "grounding budget exceeded at depth " + std::to_string(depth);
      r.depth_used = depth;
      return r;
    }
    std::vector<Qff> problem = inst;
    for (const auto& d : disjuncts) problem.push_back(dual(d));
    std::vector<std::pair<Qff, bool>> model;
    std::size_t dec = 0, conf = 0;
    bool sat = satisfiable(problem, &model, &dec, &conf);
    r.decisions += dec;
    r.conflicts += conf;
    r.depth_used = depth;
    if (!sat) {
      r.status = TautStatus::Valid;
      r.instances = std::move(inst);
      return r;
    }
    r.status = TautStatus::Invalid;
    r.assignment = std::move(model);
    r.instances = std::move(inst);
  }
  r.reason = "falsifying assignment found";
  return r;
}

}  // namespace herbnet
