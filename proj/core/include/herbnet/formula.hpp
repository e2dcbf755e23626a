#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace herbnet {

struct ParseError : std::runtime_error {
  std::size_t pos;
  ParseError(const std::string& msg, std::size_t p);
};

// Raised when a caller violates an operation's documented precondition.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Term {
  bool is_var = true;
  std::string name;
  std::vector<Term> args;

  static Term var(std::string n);
  static Term app(std::string f, std::vector<Term> args = {});

  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }
  bool operator<(const Term& o) const;
};

struct Qff {
  enum Kind { Atom, Or, And };
  Kind kind = Atom;
  bool positive = true;
  std::string pred;
  std::vector<Term> args;
  std::vector<Qff> kids;

  static Qff atom(bool positive, std::string pred, std::vector<Term> args = {});
  static Qff disj(Qff a, Qff b);
  static Qff conj(Qff a, Qff b);

  bool operator==(const Qff& o) const;
  bool operator!=(const Qff& o) const { return !(*this == o); }
  bool operator<(const Qff& o) const;
};

enum class Quant { Forall, Exists };

struct Binder {
  Quant q;
  std::string var;
  bool operator==(const Binder& o) const { return q == o.q && var == o.var; }
};

struct Formula {
  std::vector<Binder> prefix;
  Qff matrix;

  bool is_qff() const { return prefix.empty(); }
  bool starts_exists() const { return !prefix.empty() && prefix[0].q == Quant::Exists; }
  bool starts_forall() const { return !prefix.empty() && prefix[0].q == Quant::Forall; }
  std::size_t rank() const { return prefix.size(); }

  bool operator==(const Formula& o) const { return prefix == o.prefix && matrix == o.matrix; }
  bool operator!=(const Formula& o) const { return !(*this == o); }
};

struct Signature {
  std::set<std::string> variables;
  std::map<std::string, int> functions;
  std::map<std::string, int> predicates;
  // Undeclared predicate and function symbols are declared on first use.
  bool permissive = true;

  bool is_constant(const std::string& name) const;
  std::vector<std::string> constants() const;
};

struct Theory {
  Signature sig;
  std::vector<Qff> axioms;
};

// Starting counter for name supplies built without an explicit base.
long default_name_base();
void set_default_name_base(long base);

// Deterministic fresh names: base name plus a monotone counter.
class NameSupply {
 public:
  explicit NameSupply(long base = default_name_base()) : next_(base) {}
  void reserve(const std::string& name) { used_.insert(name); }
  template <class It>
  void reserve(It first, It last) {
    used_.insert(first, last);
  }
  bool used(const std::string& name) const { return used_.count(name) != 0; }
  std::string fresh(const std::string& base);
  long counter() const { return next_; }

 private:
  std::set<std::string> used_;
  long next_;
};

std::string render(const Term& t);
std::string render(const Qff& q);
std::string render(const Formula& f);

Term parse_term(std::string_view text, Signature& sig);
Qff parse_qff(std::string_view text, Signature& sig);
Formula parse_formula(std::string_view text, Signature& sig);

Qff dual(const Qff& q);
Formula dual(const Formula& f);

void collect_vars(const Term& t, std::set<std::string>& out);
std::set<std::string> free_vars(const Term& t);
std::set<std::string> free_vars(const Qff& q);
std::set<std::string> free_vars(const Formula& f);
std::pair<std::set<std::string>, std::set<std::string>> vars(const Formula& f);
// Every symbol name mentioned anywhere (variables, binders, function symbols).
void collect_names(const Formula& f, std::set<std::string>& out);
void collect_names(const Term& t, std::set<std::string>& out);

bool occurs(const std::string& x, const Term& t);
Term subst(const Term& t, const std::string& x, const Term& m);
Qff subst(const Qff& q, const std::string& x, const Term& m);
// Replaces every occurrence of the subterm `what` by `by`.
Term replace(const Term& t, const Term& what, const Term& by);
Qff replace(const Qff& q, const Term& what, const Term& by);

// Capture-avoiding substitution; prefix variables clashing with free(M) are
// renamed from the supply.  Throws PreconditionError if x is bound in A.
Formula substitute(const Formula& a, const std::string& x, const Term& m, NameSupply& supply);
Formula substitute(const Formula& a, const std::string& x, const Term& m);

// Strips the first binder Qx and substitutes M for x in the remainder.
Formula instantiate(const Formula& a, const Term& m);

// Equality up to consistent renaming of prefix variables.
bool alpha_equal(const Formula& a, const Formula& b);
// Prefix variables renamed positionally (?0, ?1, ...) for comparison and hashing.
Formula canonical(const Formula& a);

void subterms(const Term& t, std::set<Term>& out);
void subterms(const Qff& q, std::set<Term>& out);
std::size_t term_size(const Term& t);
void flatten_disjuncts(const Qff& q, std::vector<Qff>& out);

}  // namespace herbnet
