#include "herbnet/aeterm.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "herbnet/cursor.hpp"

namespace herbnet {

bool IndexLess::operator()(const std::string& a, const std::string& b) const {
  std::size_t i = 0, j = 0;
  auto digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
  while (i < a.size() && j < b.size()) {
    if (digit(a[i]) && digit(b[j])) {
      std::size_t i0 = i, j0 = j;
      while (i < a.size() && digit(a[i])) ++i;
      while (j < b.size() && digit(b[j])) ++j;
      std::string_view x(a.data() + i0, i - i0), y(b.data() + j0, j - j0);
      while (x.size() > 1 && x.front() == '0') x.remove_prefix(1);
      while (y.size() > 1 && y.front() == '0') y.remove_prefix(1);
      if (x.size() != y.size()) return x.size() < y.size();
      if (x != y) return x < y;
      continue;
    }
    if (a[i] != b[j]) return a[i] < b[j];
    ++i;
    ++j;
  }
  if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
  return a < b;
}

AeTerm AeTerm::make_leaf(IndexSet s) {
  AeTerm t;
  t.kind = NodeKind::Leaf;
  t.leaf = std::move(s);
  return t;
}

AeTerm AeTerm::make_alpha(std::string a, AeTerm k) {
  AeTerm t;
  t.kind = NodeKind::Alpha;
  t.eigen = std::move(a);
  t.kids.push_back(std::move(k));
  return t;
}

AeTerm AeTerm::make_eps(Term m, AeTerm k) {
  AeTerm t;
  t.kind = NodeKind::Eps;
  t.witness = std::move(m);
  t.kids.push_back(std::move(k));
  return t;
}

AeTerm AeTerm::make_sum(std::vector<AeTerm> ws) {
  AeTerm t;
  t.kind = NodeKind::Sum;
  t.kids = std::move(ws);
  return t;
}

AeTerm AeTerm::make_cut(AeTerm l, AeTerm r) {
  AeTerm t;
  t.kind = NodeKind::Cut;
  t.kids.push_back(std::move(l));
  t.kids.push_back(std::move(r));
  return t;
}

// ------------------------------------------------------------------ parsing

namespace {

AeTerm parse_simple(Cursor& c, Signature& sig) {
  if (c.eat("{")) {
    IndexSet s;
    s.insert(c.index_token());
    while (c.eat(",")) s.insert(c.index_token());
    c.expect("}");
    return AeTerm::make_leaf(std::move(s));
  }
  if (c.eat("a[")) {
    std::string v = c.ident();
    if (sig.functions.count(v) || sig.predicates.count(v))
      c.fail("eigenvariable '" + v + "' is a declared symbol");
    c.expect("]");
    c.expect(".");
    return AeTerm::make_alpha(v, parse_simple(c, sig));
  }
  if (c.eat("e[")) {
    Term m = parse_term_at(c, sig);
    c.expect("]");
    c.expect(".");
    return AeTerm::make_eps(std::move(m), parse_simple(c, sig));
  }
  if (c.eat("(")) {
    std::vector<AeTerm> ws;
    do {
      AeTerm w = parse_simple(c, sig);
      if (w.kind != NodeKind::Eps) c.fail("sum members must be witnesses e[M].t");
      ws.push_back(std::move(w));
    } while (c.eat("+"));
    c.expect(")");
    return AeTerm::make_sum(std::move(ws));
  }
  c.fail("expected an alpha-epsilon term");
}

}  // namespace

AeTerm parse_aeterm(std::string_view text, Signature& sig) {
  Cursor c(text);
  if (c.at_end()) c.fail("empty term");
  AeTerm t = parse_simple(c, sig);
  if (c.eat("><")) t = AeTerm::make_cut(std::move(t), parse_simple(c, sig));
  if (!c.at_end()) c.fail("trailing input");
  return t;
}

// ---------------------------------------------------------------- rendering

namespace {
std::string render_set(const IndexSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& i : s) {
    if (!first) out += ",";
    out += i;
    first = false;
  }
  return out + "}";
}
}  // namespace

std::string render(const AeTerm& t) {
  switch (t.kind) {
    case NodeKind::Leaf:
      return render_set(t.leaf);
    case NodeKind::Alpha:
      return "a[" + t.eigen + "]." + render(t.kids[0]);
    case NodeKind::Eps:
      return "e[" + render(t.witness) + "]." + render(t.kids[0]);
    case NodeKind::Sum: {
      std::string s = "(";
      for (std::size_t i = 0; i < t.kids.size(); ++i) {
        if (i) s += " + ";
        s += render(t.kids[i]);
      }
      return s + ")";
    }
    case NodeKind::Cut:
      return render(t.kids[0]) + " >< " + render(t.kids[1]);
  }
  return {};
}

std::string render_type(const NetType& t) {
  switch (t.kind) {
    case NetType::Logical:
      return render(t.f);
    case NetType::Witness:
      return "<" + render(t.f) + ">";
    case NetType::CutType:
      return render(t.f) + " >< " + render(dual(t.f));
  }
  return {};
}

std::string render_root(const AeTerm& t) { return render(t) + " : " + render_type(t.type); }

std::string render(const Forest& f) {
  std::string s;
  for (const auto& r : f.roots) s += render_root(r) + "\n";
  return s;
}

// ---------------------------------------------------------------------- ids

void assign_ids(AeTerm& t, int& next) {
  if (t.id < 0) t.id = next++;
  for (auto& k : t.kids) assign_ids(k, next);
}

void renumber(AeTerm& t, int& next) {
  t.id = next++;
  for (auto& k : t.kids) renumber(k, next);
}

namespace {
void max_id_in(const AeTerm& t, int& m) {
  m = std::max(m, t.id);
  for (const auto& k : t.kids) max_id_in(k, m);
}
}  // namespace

int max_id(const Forest& f) {
  int m = -1;
  for (const auto& r : f.roots) max_id_in(r, m);
  return m;
}

void assign_ids(Forest& f) {
  f.next_id = std::max(f.next_id, max_id(f) + 1);
  for (auto& r : f.roots) assign_ids(r, f.next_id);
}

// ------------------------------------------------------------------- typing

void typecheck(AeTerm& t, const NetType& T) {
  t.type = T;
  const Formula& f = T.f;
  switch (t.kind) {
    case NodeKind::Leaf:
      if (T.kind != NetType::Logical) throw TypeError("leaf must have a logical type", t.id);
      if (!f.is_qff()) throw TypeError("leaf against quantified type " + render(f), t.id);
      if (t.leaf.empty()) throw TypeError("empty index set", t.id);
      return;
    case NodeKind::Alpha:
      if (T.kind != NetType::Logical || !f.starts_forall())
        throw TypeError("alpha node against non-universal type " + render_type(T), t.id);
      typecheck(t.kids.at(0), NetType::logical(instantiate(f, Term::var(t.eigen))));
      return;
    case NodeKind::Eps:
      if (T.kind == NetType::Logical) throw TypeError("naked witness against logical type " + render(f), t.id);
      if (T.kind != NetType::Witness || !f.starts_exists())
        throw TypeError("witness against non-existential type " + render_type(T), t.id);
      typecheck(t.kids.at(0), NetType::logical(instantiate(f, t.witness)));
      return;
    case NodeKind::Sum:
      if (T.kind != NetType::Logical || !f.starts_exists())
        throw TypeError("sum against non-existential type " + render_type(T), t.id);
      if (t.kids.empty()) throw TypeError("empty sum", t.id);
      for (auto& w : t.kids) {
        if (w.kind != NodeKind::Eps) throw TypeError("sum member is not a witness", w.id);
        typecheck(w, NetType::witness(f));
      }
      return;
    case NodeKind::Cut:
      if (T.kind != NetType::CutType) throw TypeError("cut needs a cut type", t.id);
      for (auto& k : t.kids)
        if (k.kind == NodeKind::Cut) throw TypeError("nested cut", k.id);
      typecheck(t.kids.at(0), NetType::logical(f));
      typecheck(t.kids.at(1), NetType::logical(dual(f)));
      return;
  }
}

void annotate(Forest& f) {
  for (auto& r : f.roots) {
    NetType T = r.type;
    typecheck(r, T);
  }
}

Forest make_forest(std::vector<std::pair<AeTerm, NetType>> roots) {
  Forest f;
  for (auto& [t, T] : roots) {
    t.type = T;
    f.roots.push_back(std::move(t));
  }
  assign_ids(f);
  annotate(f);
  return f;
}

// --------------------------------------------------------------- variables

std::set<std::string> free_alpha(const AeTerm& t) {
  std::set<std::string> out;
  switch (t.kind) {
    case NodeKind::Leaf:
      return free_vars(t.type.f);
    case NodeKind::Alpha:
      out = free_alpha(t.kids[0]);
      out.erase(t.eigen);
      return out;
    case NodeKind::Eps:
      out = free_alpha(t.kids[0]);
      collect_vars(t.witness, out);
      return out;
    case NodeKind::Sum:
    case NodeKind::Cut:
      for (const auto& k : t.kids) {
        auto s = free_alpha(k);
        out.insert(s.begin(), s.end());
      }
      return out;
  }
  return out;
}

void collect_eigen(const AeTerm& t, std::vector<std::pair<std::string, int>>& out) {
  if (t.kind == NodeKind::Alpha) out.emplace_back(t.eigen, t.id);
  for (const auto& k : t.kids) collect_eigen(k, out);
}

std::set<std::string> eigenvariables(const Forest& f) {
  std::vector<std::pair<std::string, int>> ev;
  for (const auto& r : f.roots) collect_eigen(r, ev);
  std::set<std::string> out;
  for (const auto& [a, id] : ev) out.insert(a);
  return out;
}

void collect_indices(const AeTerm& t, IndexSet& out) {
  if (t.kind == NodeKind::Leaf) out.insert(t.leaf.begin(), t.leaf.end());
  for (const auto& k : t.kids) collect_indices(k, out);
}

std::set<std::string, IndexLess> indices(const Forest& f) {
  IndexSet out;
  for (const auto& r : f.roots) collect_indices(r, out);
  return out;
}

namespace {
void collect_term_names(const AeTerm& t, std::set<std::string>& out) {
  if (t.kind == NodeKind::Alpha) out.insert(t.eigen);
  if (t.kind == NodeKind::Eps) collect_names(t.witness, out);
  for (const auto& k : t.kids) collect_term_names(k, out);
}
}  // namespace

std::set<std::string> names(const Forest& f) {
  std::set<std::string> out;
  for (const auto& r : f.roots) {
    collect_term_names(r, out);
    collect_names(r.type.f, out);
  }
  return out;
}

void reserve_names(const Forest& f, NameSupply& supply) {
  auto n = names(f);
  supply.reserve(n.begin(), n.end());
}

VarClasses classify_vars(const Forest& f) {
  VarClasses v;
  v.alpha_bound = eigenvariables(f);
  for (const auto& r : f.roots)
    for (const auto& a : free_alpha(r))
      if (!v.alpha_bound.count(a)) v.alpha_free.insert(a);
  return v;
}

std::vector<Violation> check_annotated_sequent(const Forest& f) {
  std::vector<Violation> out;
  std::vector<std::pair<std::string, int>> ev;
  for (const auto& r : f.roots) collect_eigen(r, ev);
  std::map<std::string, std::vector<int>> by_name;
  for (const auto& [a, id] : ev) by_name[a].push_back(id);
  std::set<std::string> bound;
  for (const auto& [a, ids] : by_name) {
    bound.insert(a);
    if (ids.size() > 1) out.push_back({'a', "duplicate eigenvariable " + a, ids});
  }
  for (const auto& r : f.roots) {
    if (r.type.kind == NetType::CutType) continue;
    for (const auto& v : free_vars(r.type.f))
      if (bound.count(v))
        out.push_back({'b', "eigenvariable " + v + " free in the type of root " + std::to_string(r.id), {r.id}});
  }
  for (const auto& r : f.roots)
    if (r.type.kind == NetType::Witness)
      out.push_back({'c', "naked witness root " + std::to_string(r.id), {r.id}});
  return out;
}

bool is_strict(const Forest& f) {
  for (const auto& v : check_annotated_sequent(f))
    if (v.clause != 'c') return false;
  return true;
}

// ----------------------------------------------------------------- renaming

NetType substitute_type(const NetType& t, const std::string& a, const Term& m) {
  for (const auto& b : t.f.prefix)
    if (b.var == a) return t;
  NetType r = t;
  r.f = substitute(t.f, a, m);
  return r;
}

void rename_var_in(AeTerm& t, const std::string& a, const std::string& b) {
  if (t.kind == NodeKind::Alpha && t.eigen == a) t.eigen = b;
  if (t.kind == NodeKind::Eps) t.witness = subst(t.witness, a, Term::var(b));
  for (auto& k : t.kids) rename_var_in(k, a, b);
}

void substitute_in(AeTerm& t, const std::string& a, const Term& m) {
  if (t.kind == NodeKind::Eps) t.witness = subst(t.witness, a, m);
  for (auto& k : t.kids) substitute_in(k, a, m);
}

namespace {
void rename_var_unchecked(Forest& f, const std::string& a, const std::string& b) {
  for (auto& r : f.roots) {
    rename_var_in(r, a, b);
    r.type = substitute_type(r.type, a, Term::var(b));
  }
}

void rename_index_in(AeTerm& t, const std::map<std::string, std::string>& m) {
  if (t.kind == NodeKind::Leaf) {
    IndexSet s;
    for (const auto& i : t.leaf) {
      auto it = m.find(i);
      s.insert(it == m.end() ? i : it->second);
    }
    t.leaf = std::move(s);
  }
  for (auto& k : t.kids) rename_index_in(k, m);
}
}  // namespace

Forest rename_var(const Forest& f, const std::string& a, const std::string& b) {
  if (a == b) return f;
  if (names(f).count(b)) throw PreconditionError("rename target " + b + " is not fresh");
  Forest r = f;
  rename_var_unchecked(r, a, b);
  annotate(r);
  return r;
}

Forest rename_vars(const Forest& f, const std::map<std::string, std::string>& m) {
  auto used = names(f);
  for (const auto& [a, b] : m)
    if (a != b && used.count(b)) throw PreconditionError("rename target " + b + " is not fresh");
  Forest r = f;
  for (const auto& [a, b] : m)
    if (a != b) rename_var_unchecked(r, a, b);
  annotate(r);
  return r;
}

Forest rename_index(const Forest& f, const std::string& i, const std::string& j) {
  return rename_indices(f, {{i, j}});
}

Forest rename_indices(const Forest& f, const std::map<std::string, std::string>& m) {
  Forest r = f;
  for (auto& root : r.roots) rename_index_in(root, m);
  return r;
}

Forest substitute(const Forest& f, const std::string& a, const Term& m) {
  if (eigenvariables(f).count(a)) throw PreconditionError("variable " + a + " is alpha-bound in the forest");
  Forest r = f;
  for (auto& root : r.roots) {
    substitute_in(root, a, m);
    root.type = substitute_type(root.type, a, m);
  }
  annotate(r);
  return r;
}

// ---------------------------------------------------------- merge / weaken

MergeResult merge(const AeTerm& t, const AeTerm& s, const Formula& a, NameSupply& fresh) {
  MergeResult out;
  if (a.is_qff()) {
    if (t.kind != NodeKind::Leaf || s.kind != NodeKind::Leaf)
      throw TypeError("merge at a quantifier-free type needs two leaves", t.id);
    out.tree = t;
    out.tree.leaf.insert(s.leaf.begin(), s.leaf.end());
  } else if (a.starts_exists()) {
    if (t.kind != NodeKind::Sum || s.kind != NodeKind::Sum)
      throw TypeError("merge at an existential type needs two sums", t.id);
    out.tree = t;
    out.tree.kids.insert(out.tree.kids.end(), s.kids.begin(), s.kids.end());
  } else {
    if (t.kind != NodeKind::Alpha || s.kind != NodeKind::Alpha)
      throw TypeError("merge at a universal type needs two alpha nodes", t.id);
    std::string e = fresh.fresh(t.eigen);
    AeTerm tk = t.kids[0], sk = s.kids[0];
    rename_var_in(tk, t.eigen, e);
    rename_var_in(sk, s.eigen, e);
    MergeResult inner = merge(tk, sk, instantiate(a, Term::var(e)), fresh);
    out.tree = AeTerm::make_alpha(e, std::move(inner.tree));
    out.tree.id = t.id;
    out.renaming = {{t.eigen, e}, {s.eigen, e}};
    out.renaming.insert(out.renaming.end(), inner.renaming.begin(), inner.renaming.end());
  }
  out.tree.type = NetType::logical(a);
  return out;
}

AeTerm weaken(const Formula& a, const Forest& f, const Signature& sig, NameSupply& fresh) {
  auto bound = eigenvariables(f);
  for (const auto& v : free_vars(a))
    if (bound.count(v)) throw PreconditionError("variable " + v + " of the weakened formula is alpha-bound");
  reserve_names(f, fresh);
  std::set<std::string> an;
  collect_names(a, an);
  fresh.reserve(an.begin(), an.end());
  auto idx = indices(f);
  std::string index = idx.empty() ? "1" : *idx.begin();
  auto consts = sig.constants();
  std::function<AeTerm(const Formula&)> build = [&](const Formula& b) -> AeTerm {
    if (b.is_qff()) return AeTerm::make_leaf({index});
    if (b.starts_forall()) {
      std::string z = fresh.fresh("z");
      return AeTerm::make_alpha(z, build(instantiate(b, Term::var(z))));
    }
    if (consts.empty()) throw PreconditionError("weakening an existential needs a constant in the signature");
    Term c = Term::app(consts.front());
    return AeTerm::make_sum({AeTerm::make_eps(c, build(instantiate(b, c)))});
  };
  AeTerm t = build(a);
  typecheck(t, NetType::logical(a));
  return t;
}

// --------------------------------------------------------------- equality

namespace {
std::string canonical_term(const AeTerm& t) {
  switch (t.kind) {
    case NodeKind::Leaf:
      return render_set(t.leaf);
    case NodeKind::Alpha:
      return "a[" + t.eigen + "]." + canonical_term(t.kids[0]);
    case NodeKind::Eps:
      return "e[" + render(t.witness) + "]." + canonical_term(t.kids[0]);
    case NodeKind::Sum: {
      std::vector<std::string> ks;
      for (const auto& k : t.kids) ks.push_back(canonical_term(k));
      std::sort(ks.begin(), ks.end());
      std::string s = "(";
      for (std::size_t i = 0; i < ks.size(); ++i) s += (i ? " + " : "") + ks[i];
      return s + ")";
    }
    case NodeKind::Cut:
      return canonical_term(t.kids[0]) + " >< " + canonical_term(t.kids[1]);
  }
  return {};
}
}  // namespace

std::string canonical_root(const AeTerm& t) {
  static const char* tag[] = {"L ", "W ", "C "};
  return canonical_term(t) + " : " + tag[t.type.kind] + render(canonical(t.type.f));
}

std::vector<std::string> canonical_roots(const Forest& f) {
  std::vector<std::string> out;
  for (const auto& r : f.roots) out.push_back(canonical_root(r));
  std::sort(out.begin(), out.end());
  return out;
}

bool forest_equal(const Forest& a, const Forest& b) { return canonical_roots(a) == canonical_roots(b); }

// ------------------------------------------------------------------ lookup

namespace {
template <class T>
T* find_in(T& t, int id) {
  if (t.id == id) return &t;
  for (auto& k : t.kids)
    if (auto* p = find_in(k, id)) return p;
  return nullptr;
}
std::size_t count_in(const AeTerm& t) {
  std::size_t n = 1;
  for (const auto& k : t.kids) n += count_in(k);
  return n;
}
}  // namespace

const AeTerm* find_node(const Forest& f, int id) {
  for (const auto& r : f.roots)
    if (auto* p = find_in(r, id)) return p;
  return nullptr;
}

AeTerm* find_node(Forest& f, int id) {
  for (auto& r : f.roots)
    if (auto* p = find_in(r, id)) return p;
  return nullptr;
}

int root_of(const Forest& f, int id) {
  for (std::size_t i = 0; i < f.roots.size(); ++i)
    if (find_in(f.roots[i], id)) return static_cast<int>(i);
  return -1;
}

std::size_t node_count(const Forest& f) {
  std::size_t n = 0;
  for (const auto& r : f.roots) n += count_in(r);
  return n;
}

}  // namespace herbnet
