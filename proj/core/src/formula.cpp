#include "herbnet/formula.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

#include "herbnet/cursor.hpp"

namespace herbnet {

ParseError::ParseError(const std::string& msg, std::size_t p) : std::runtime_error(msg), pos(p) {}

Term Term::var(std::string n) {
  Term t;
  t.is_var = true;
  t.name = std::move(n);
  return t;
}

Term Term::app(std::string f, std::vector<Term> args) {
  Term t;
  t.is_var = false;
  t.name = std::move(f);
  t.args = std::move(args);
  return t;
}

bool Term::operator==(const Term& o) const {
  return is_var == o.is_var && name == o.name && args == o.args;
}

bool Term::operator<(const Term& o) const {
  if (is_var != o.is_var) return is_var > o.is_var;
  if (name != o.name) return name < o.name;
  return std::lexicographical_compare(args.begin(), args.end(), o.args.begin(), o.args.end());
}

Qff Qff::atom(bool positive, std::string pred, std::vector<Term> args) {
  Qff q;
  q.kind = Atom;
  q.positive = positive;
  q.pred = std::move(pred);
  q.args = std::move(args);
  return q;
}

Qff Qff::disj(Qff a, Qff b) {
  Qff q;
  q.kind = Or;
  q.kids = {std::move(a), std::move(b)};
  return q;
}

Qff Qff::conj(Qff a, Qff b) {
  Qff q;
  q.kind = And;
  q.kids = {std::move(a), std::move(b)};
  return q;
}

bool Qff::operator==(const Qff& o) const {
  if (kind != o.kind) return false;
  if (kind == Atom) return positive == o.positive && pred == o.pred && args == o.args;
  return kids == o.kids;
}

bool Qff::operator<(const Qff& o) const {
  if (kind != o.kind) return kind < o.kind;
  if (kind == Atom) {
    return std::tie(pred, positive, args) < std::tie(o.pred, o.positive, o.args);
  }
  return kids < o.kids;
}

bool Signature::is_constant(const std::string& name) const {
  auto it = functions.find(name);
  return it != functions.end() && it->second == 0;
}

std::vector<std::string> Signature::constants() const {
  std::vector<std::string> out;
  for (const auto& [f, n] : functions)
    if (n == 0) out.push_back(f);
  return out;
}

namespace {
long name_base = 0;
}

long default_name_base() { return name_base; }
void set_default_name_base(long base) { name_base = base; }

std::string NameSupply::fresh(const std::string& base) {
  std::string b = base;
  while (b.size() > 1 && std::isdigit(static_cast<unsigned char>(b.back()))) b.pop_back();
  if (b.empty()) b = "v";
  for (;;) {
    std::string cand = b + std::to_string(next_++);
    if (!used_.count(cand)) {
      used_.insert(cand);
      return cand;
    }
  }
}

// ---------------------------------------------------------------- rendering

std::string render(const Term& t) {
  if (t.is_var || t.args.empty()) return t.name;
  std::string s = t.name + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) s += ",";
    s += render(t.args[i]);
  }
  return s + ")";
}

std::string render(const Qff& q) {
  switch (q.kind) {
    case Qff::Atom: {
      std::string s = q.positive ? "" : "~";
      s += q.pred;
      if (!q.args.empty()) {
        s += "(";
        for (std::size_t i = 0; i < q.args.size(); ++i) {
          if (i) s += ",";
          s += render(q.args[i]);
        }
        s += ")";
      }
      return s;
    }
    case Qff::Or:
      return "(" + render(q.kids[0]) + " | " + render(q.kids[1]) + ")";
    case Qff::And:
      return "(" + render(q.kids[0]) + " & " + render(q.kids[1]) + ")";
  }
  return {};
}

std::string render(const Formula& f) {
  std::string s;
  for (const auto& b : f.prefix) {
    s += b.q == Quant::Forall ? "forall " : "exists ";
    s += b.var + ". ";
  }
  return s + render(f.matrix);
}

// ------------------------------------------------------------------ parsing

namespace {

void declare(std::map<std::string, int>& table, const std::map<std::string, int>& other,
             const std::string& name, int arity, const Signature& sig, Cursor& c,
             const char* what) {
  if (other.count(name)) c.fail(std::string(what) + " symbol '" + name + "' clashes with another namespace");
  auto it = table.find(name);
  if (it == table.end()) {
    if (!sig.permissive) c.fail(std::string("undeclared ") + what + " '" + name + "'");
    table[name] = arity;
    return;
  }
  if (it->second != arity)
    c.fail("arity mismatch for '" + name + "': expected " + std::to_string(it->second) + ", got " +
           std::to_string(arity));
}

bool quantifier_ahead(Cursor& c) { return c.looking_at("forall") || c.looking_at("exists"); }

Qff parse_atom(Cursor& c, Signature& sig, bool positive) {
  if (quantifier_ahead(c)) c.fail("quantifier inside matrix");
  std::string p = c.ident();
  std::vector<Term> args;
  if (c.eat("(")) {
    args.push_back(parse_term_at(c, sig));
    while (c.eat(",")) args.push_back(parse_term_at(c, sig));
    c.expect(")");
  }
  declare(sig.predicates, sig.functions, p, static_cast<int>(args.size()), sig, c, "predicate");
  return Qff::atom(positive, p, std::move(args));
}

Qff parse_qff_primary(Cursor& c, Signature& sig) {
  if (c.eat("~")) return parse_atom(c, sig, false);
  if (c.eat("(")) {
    Qff q = parse_qff_at(c, sig);
    c.expect(")");
    return q;
  }
  return parse_atom(c, sig, true);
}

}  // namespace

Term parse_term_at(Cursor& c, Signature& sig) {
  // Numerals are always constants.
  if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
    std::string n = c.index_token();
    if (!std::all_of(n.begin(), n.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
      c.fail("malformed numeral '" + n + "'");
    declare(sig.functions, sig.predicates, n, 0, sig, c, "function");
    return Term::app(n);
  }
  std::string n = c.ident();
  if (c.eat("(")) {
    std::vector<Term> args;
    args.push_back(parse_term_at(c, sig));
    while (c.eat(",")) args.push_back(parse_term_at(c, sig));
    c.expect(")");
    declare(sig.functions, sig.predicates, n, static_cast<int>(args.size()), sig, c, "function");
    return Term::app(n, std::move(args));
  }
  if (sig.is_constant(n)) return Term::app(n);
  if (sig.functions.count(n)) c.fail("arity mismatch for '" + n + "': function used without arguments");
  if (sig.predicates.count(n)) c.fail("predicate '" + n + "' used as a term");
  return Term::var(n);
}

Qff parse_qff_at(Cursor& c, Signature& sig) {
  Qff q = parse_qff_primary(c, sig);
  char op = 0;
  for (;;) {
    char next = c.peek();
    if (next != '|' && next != '&') break;
    if (op && next != op) c.fail("mixed connectives need parentheses");
    op = next;
    c.eat(std::string_view(&next, 1));
    Qff r = parse_qff_primary(c, sig);
    q = op == '|' ? Qff::disj(std::move(q), std::move(r)) : Qff::conj(std::move(q), std::move(r));
  }
  return q;
}

Formula parse_formula_at(Cursor& c, Signature& sig) {
  Formula f;
  for (;;) {
    Quant q;
    if (c.eat_word("forall"))
      q = Quant::Forall;
    else if (c.eat_word("exists"))
      q = Quant::Exists;
    else
      break;
    std::size_t at = c.pos();
    std::string v = c.ident();
    if (sig.functions.count(v) || sig.predicates.count(v))
      c.fail("bound variable '" + v + "' is a declared symbol");
    for (const auto& b : f.prefix)
      if (b.var == v) throw ParseError("duplicate prefix variable " + v + " at position " + std::to_string(at), at);
    c.expect(".");
    f.prefix.push_back({q, v});
  }
  f.matrix = parse_qff_at(c, sig);
  return f;
}

Term parse_term(std::string_view text, Signature& sig) {
  Cursor c(text);
  Term t = parse_term_at(c, sig);
  if (!c.at_end()) c.fail("trailing input");
  return t;
}

Qff parse_qff(std::string_view text, Signature& sig) {
  Cursor c(text);
  if (c.at_end()) c.fail("empty formula");
  Qff q = parse_qff_at(c, sig);
  if (!c.at_end()) {
    if (quantifier_ahead(c)) c.fail("quantifier inside matrix");
    c.fail("trailing input");
  }
  return q;
}

Formula parse_formula(std::string_view text, Signature& sig) {
  Cursor c(text);
  if (c.at_end()) c.fail("empty formula");
  Formula f = parse_formula_at(c, sig);
  if (!c.at_end()) c.fail("trailing input");
  return f;
}

// --------------------------------------------------------------- operations

Qff dual(const Qff& q) {
  switch (q.kind) {
    case Qff::Atom:
      return Qff::atom(!q.positive, q.pred, q.args);
    case Qff::Or:
      return Qff::conj(dual(q.kids[0]), dual(q.kids[1]));
    case Qff::And:
      return Qff::disj(dual(q.kids[0]), dual(q.kids[1]));
  }
  return q;
}

Formula dual(const Formula& f) {
  Formula d;
  for (const auto& b : f.prefix)
    d.prefix.push_back({b.q == Quant::Forall ? Quant::Exists : Quant::Forall, b.var});
  d.matrix = dual(f.matrix);
  return d;
}

void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_var) {
    out.insert(t.name);
    return;
  }
  for (const auto& a : t.args) collect_vars(a, out);
}

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  collect_vars(t, out);
  return out;
}

namespace {
void collect_vars(const Qff& q, std::set<std::string>& out) {
  if (q.kind == Qff::Atom) {
    for (const auto& a : q.args) herbnet::collect_vars(a, out);
    return;
  }
  for (const auto& k : q.kids) collect_vars(k, out);
}
}  // namespace

std::set<std::string> free_vars(const Qff& q) {
  std::set<std::string> out;
  collect_vars(q, out);
  return out;
}

std::set<std::string> free_vars(const Formula& f) { return vars(f).first; }

std::pair<std::set<std::string>, std::set<std::string>> vars(const Formula& f) {
  std::set<std::string> bound;
  for (const auto& b : f.prefix) bound.insert(b.var);
  std::set<std::string> fr;
  for (const auto& v : free_vars(f.matrix))
    if (!bound.count(v)) fr.insert(v);
  return {fr, bound};
}

void collect_names(const Term& t, std::set<std::string>& out) {
  out.insert(t.name);
  for (const auto& a : t.args) collect_names(a, out);
}

namespace {
void collect_names(const Qff& q, std::set<std::string>& out) {
  if (q.kind == Qff::Atom) {
    for (const auto& a : q.args) herbnet::collect_names(a, out);
    return;
  }
  for (const auto& k : q.kids) collect_names(k, out);
}
}  // namespace

void collect_names(const Formula& f, std::set<std::string>& out) {
  for (const auto& b : f.prefix) out.insert(b.var);
  collect_names(f.matrix, out);
}

bool occurs(const std::string& x, const Term& t) {
  if (t.is_var) return t.name == x;
  for (const auto& a : t.args)
    if (occurs(x, a)) return true;
  return false;
}

Term subst(const Term& t, const std::string& x, const Term& m) {
  if (t.is_var) return t.name == x ? m : t;
  Term r = t;
  for (auto& a : r.args) a = subst(a, x, m);
  return r;
}

Qff subst(const Qff& q, const std::string& x, const Term& m) {
  Qff r = q;
  if (q.kind == Qff::Atom) {
    for (auto& a : r.args) a = subst(a, x, m);
  } else {
    for (auto& k : r.kids) k = subst(k, x, m);
  }
  return r;
}

Term replace(const Term& t, const Term& what, const Term& by) {
  if (t == what) return by;
  if (t.is_var) return t;
  Term r = t;
  for (auto& a : r.args) a = replace(a, what, by);
  return r;
}

Qff replace(const Qff& q, const Term& what, const Term& by) {
  Qff r = q;
  if (q.kind == Qff::Atom) {
    for (auto& a : r.args) a = replace(a, what, by);
  } else {
    for (auto& k : r.kids) k = replace(k, what, by);
  }
  return r;
}

Formula substitute(const Formula& a, const std::string& x, const Term& m, NameSupply& supply) {
  for (const auto& b : a.prefix)
    if (b.var == x) throw PreconditionError("variable " + x + " is bound in the formula");
  std::set<std::string> names;
  collect_names(a, names);
  collect_names(m, names);
  supply.reserve(names.begin(), names.end());
  std::set<std::string> fm = free_vars(m);
  Formula r = a;
  for (auto& b : r.prefix) {
    if (!fm.count(b.var)) continue;
    std::string y = supply.fresh(b.var);
    r.matrix = subst(r.matrix, b.var, Term::var(y));
    b.var = y;
  }
  r.matrix = subst(r.matrix, x, m);
  return r;
}

Formula substitute(const Formula& a, const std::string& x, const Term& m) {
  NameSupply supply;
  return substitute(a, x, m, supply);
}

Formula instantiate(const Formula& a, const Term& m) {
  if (a.prefix.empty()) throw PreconditionError("cannot instantiate a quantifier-free formula");
  Formula rest;
  rest.prefix.assign(a.prefix.begin() + 1, a.prefix.end());
  rest.matrix = a.matrix;
  return substitute(rest, a.prefix[0].var, m);
}

Formula canonical(const Formula& a) {
  Formula r = a;
  for (std::size_t i = 0; i < r.prefix.size(); ++i) {
    std::string y = "?" + std::to_string(i);
    r.matrix = subst(r.matrix, r.prefix[i].var, Term::var(y));
    r.prefix[i].var = y;
  }
  return r;
}

bool alpha_equal(const Formula& a, const Formula& b) {
  if (a.prefix.size() != b.prefix.size()) return false;
  for (std::size_t i = 0; i < a.prefix.size(); ++i)
    if (a.prefix[i].q != b.prefix[i].q) return false;
  return canonical(a) == canonical(b);
}

void subterms(const Term& t, std::set<Term>& out) {
  out.insert(t);
  for (const auto& a : t.args) subterms(a, out);
}

void subterms(const Qff& q, std::set<Term>& out) {
  if (q.kind == Qff::Atom) {
    for (const auto& a : q.args) subterms(a, out);
    return;
  }
  for (const auto& k : q.kids) subterms(k, out);
}

std::size_t term_size(const Term& t) {
  std::size_t n = 1;
  for (const auto& a : t.args) n += term_size(a);
  return n;
}

void flatten_disjuncts(const Qff& q, std::vector<Qff>& out) {
  if (q.kind == Qff::Or) {
    flatten_disjuncts(q.kids[0], out);
    flatten_disjuncts(q.kids[1], out);
    return;
  }
  out.push_back(q);
}

}  // namespace herbnet
