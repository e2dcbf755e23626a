#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "herbnet/formula.hpp"

namespace herbnet {

struct TypeError : std::runtime_error {
  int node;
  TypeError(const std::string& msg, int node_id) : std::runtime_error(msg), node(node_id) {}
};

// Tautology indices compare in natural order: 2 < 10, 2#0 < 2#1 < 3.
struct IndexLess {
  bool operator()(const std::string& a, const std::string& b) const;
};
using IndexSet = std::set<std::string, IndexLess>;

enum class NodeKind { Leaf, Alpha, Eps, Sum, Cut };

struct NetType {
  enum Kind { Logical, Witness, CutType };
  Kind kind = Logical;
  // Witness: the existential formula; CutType: the left formula (right is its dual).
  Formula f;

  static NetType logical(Formula f) { return {Logical, std::move(f)}; }
  static NetType witness(Formula f) { return {Witness, std::move(f)}; }
  static NetType cut(Formula f) { return {CutType, std::move(f)}; }
};

struct AeTerm {
  NodeKind kind = NodeKind::Leaf;
  int id = -1;
  IndexSet leaf;
  std::string eigen;
  Term witness;
  std::vector<AeTerm> kids;
  NetType type;  // filled in by annotate()

  static AeTerm make_leaf(IndexSet s);
  static AeTerm make_alpha(std::string a, AeTerm t);
  static AeTerm make_eps(Term m, AeTerm t);
  static AeTerm make_sum(std::vector<AeTerm> ws);
  static AeTerm make_cut(AeTerm t, AeTerm s);

  bool is_expansion_tree() const { return kind != NodeKind::Eps && kind != NodeKind::Cut; }
};

// A typed forest.  The type stored on each root is authoritative; inner
// node types are derived by annotate().
struct Forest {
  std::vector<AeTerm> roots;
  int next_id = 0;
};

// Tree-shaped parse of the term grammar; ids are left unassigned (-1).
AeTerm parse_aeterm(std::string_view text, Signature& sig);
std::string render(const AeTerm& t);
std::string render_type(const NetType& t);
std::string render_root(const AeTerm& t);
std::string render(const Forest& f);

// Assigns fresh ids (pre-order) to every node with id < 0.
void assign_ids(Forest& f);
void assign_ids(AeTerm& t, int& next);
void renumber(AeTerm& t, int& next);
int max_id(const Forest& f);

// Checks t against T and records the derived type on every node.
void typecheck(AeTerm& t, const NetType& T);
void annotate(Forest& f);
Forest make_forest(std::vector<std::pair<AeTerm, NetType>> roots);

std::set<std::string> free_alpha(const AeTerm& t);
void collect_eigen(const AeTerm& t, std::vector<std::pair<std::string, int>>& out);
std::set<std::string> eigenvariables(const Forest& f);
std::set<std::string, IndexLess> indices(const Forest& f);
void collect_indices(const AeTerm& t, IndexSet& out);
// Every variable, binder, symbol and eigenvariable name appearing in f.
std::set<std::string> names(const Forest& f);

struct VarClasses {
  std::set<std::string> alpha_free;
  std::set<std::string> alpha_bound;
};
VarClasses classify_vars(const Forest& f);

struct Violation {
  char clause;  // 'a' distinct eigenvariables, 'b' bound/free clash, 'c' naked witness root
  std::string message;
  std::vector<int> nodes;
};
std::vector<Violation> check_annotated_sequent(const Forest& f);
bool is_strict(const Forest& f);

// Renamings.  Variable renaming requires a fresh target.
Forest rename_var(const Forest& f, const std::string& a, const std::string& b);
Forest rename_index(const Forest& f, const std::string& i, const std::string& j);
Forest rename_vars(const Forest& f, const std::map<std::string, std::string>& m);
Forest rename_indices(const Forest& f, const std::map<std::string, std::string>& m);
void rename_var_in(AeTerm& t, const std::string& a, const std::string& b);

// First-order substitution F[a:=M]; a must not be alpha-bound in F.
Forest substitute(const Forest& f, const std::string& a, const Term& m);
void substitute_in(AeTerm& t, const std::string& a, const Term& m);
// Substitution into the free occurrences of a type, renaming binders as needed.
NetType substitute_type(const NetType& t, const std::string& a, const Term& m);

struct MergeResult {
  AeTerm tree;
  std::vector<std::pair<std::string, std::string>> renaming;  // (old, new)
};
// Admissible contraction of two expansion trees of the same type.
MergeResult merge(const AeTerm& t, const AeTerm& s, const Formula& a, NameSupply& fresh);

// Admissible weakening: an expansion tree of type A built against F.
AeTerm weaken(const Formula& a, const Forest& f, const Signature& sig, NameSupply& fresh);

void reserve_names(const Forest& f, NameSupply& supply);

// Canonical text of a root, insensitive to node ids, sum order and binder names.
std::string canonical_root(const AeTerm& t);
std::vector<std::string> canonical_roots(const Forest& f);
bool forest_equal(const Forest& a, const Forest& b);

// Node lookup helpers.
const AeTerm* find_node(const Forest& f, int id);
AeTerm* find_node(Forest& f, int id);
// Root position in f.roots containing node id, or -1.
int root_of(const Forest& f, int id);
std::size_t node_count(const Forest& f);

}  // namespace herbnet
