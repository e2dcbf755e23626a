#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "herbnet/aeterm.hpp"
#include "herbnet/taut.hpp"

namespace herbnet {

struct Proof;

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class EdgeKind { Tree, WitnessJump, CutJump, IndexJump };

struct DepEdge {
  int from;  // vertex numbers
  int to;
  EdgeKind kind;
};

// Vertices 0..nodes.size()-1 are forest nodes ordered by id; the remaining
// vertices are tautology indices in natural order.
struct DepGraph {
  std::vector<int> node_ids;
  std::vector<NodeKind> kinds;
  std::vector<const AeTerm*> terms;
  std::vector<int> parent;  // tree parent vertex, -1 for roots and index vertices
  std::vector<std::string> index_names;
  std::vector<DepEdge> edges;
  std::vector<std::vector<int>> in;   // incoming edge numbers per vertex
  std::vector<std::vector<int>> out;  // outgoing edge numbers per vertex
  std::map<int, int> vertex_of_id;
  std::map<std::string, int, IndexLess> vertex_of_index;

  std::size_t node_count() const { return node_ids.size(); }
  std::size_t vertex_count() const { return node_ids.size() + index_names.size(); }
  bool is_index(int v) const { return v >= static_cast<int>(node_ids.size()); }
  bool switched(int v) const;
  int vertex(int id) const { return vertex_of_id.at(id); }
};

// The forest must outlive the graph (terms points into it).
DepGraph dep_graph(const Forest& f);

// A set of forest nodes, as vertex numbers of a DepGraph.
using NodeSet = std::vector<bool>;

struct AccResult {
  bool ok = false;
  std::string reason;
  // Failing switching: chosen incoming edge per switched vertex.
  std::map<int, int> switching;
  std::vector<int> cycle;  // vertex numbers, or the dependency cycle in fast mode
  std::uint64_t switchings_checked = 0;
};

enum class AccMode { Naive, Fast };

struct AccConfig {
  AccMode mode = AccMode::Fast;
  std::uint64_t max_switchings = std::uint64_t(1) << 20;
};

AccResult acc_check(const Forest& f, const AccConfig& cfg = {});
AccResult acc_check_graph(const DepGraph& g, const AccConfig& cfg = {});
// ACC test of the substructure induced by a node subset plus the index
// vertices of its leaves.  Naive mode enumerates switchings; fast mode
// contracts the switching structure.
bool acc_subset(const DepGraph& g, const NodeSet& members, AccMode mode = AccMode::Naive,
                std::uint64_t max_switchings = std::uint64_t(1) << 20);
// Cut-free criterion: one tautology index and an acyclic dependency graph.
bool cut_free_criterion(const DepGraph& g, std::vector<int>* cycle = nullptr);
bool dependency_acyclic(const DepGraph& g, std::vector<int>* cycle = nullptr);

struct IndexReport {
  std::string index;
  std::vector<Qff> disjuncts;
  TautResult result;
};

struct StructureReport {
  bool ok = true;
  std::vector<IndexReport> indices;
};

StructureReport herbrand_structure_check(const Forest& f, const Theory& th, const GroundingConfig& cfg = {});
// The disjunct list F_i for one index, in node-id order.
std::vector<Qff> index_disjuncts(const Forest& f, const std::string& index);

struct NetReport {
  bool ok = false;
  std::vector<Violation> violations;
  std::optional<AccResult> acc;
  std::optional<StructureReport> structure;
  std::string type_error;
  std::vector<std::string> failures;  // one line per failed criterion
};

NetReport check_net(const Forest& f, const Theory& th, const AccConfig& acc = {}, const GroundingConfig& g = {});
bool is_herbrand_net(const Forest& f, const Theory& th);

// Subnets.
bool dependency_closed(const DepGraph& g, const NodeSet& s);
NodeSet dependency_closure(const DepGraph& g, int vertex);
NodeSet empire(const DepGraph& g, int vertex);
NodeSet kingdom(const DepGraph& g, int vertex);
std::vector<int> members(const DepGraph& g, const NodeSet& s);  // node ids
std::set<int> empire_ids(const Forest& f, int id);
std::set<int> kingdom_ids(const Forest& f, int id);

// t << s iff t is in the kingdom of s.  Rows are indexed by vertex.
struct KingdomOrder {
  std::vector<NodeSet> kingdoms;
  bool below(int t, int s) const { return kingdoms[s][t]; }
};
KingdomOrder kingdom_order(const DepGraph& g);
bool is_antisymmetric(const KingdomOrder& o);

struct Gate {
  enum Kind { Alpha, Sum, Leaf, Eps, Cut };
  Kind kind;
  int root;  // position in f.roots
  int id;    // node id of the root
  // Cut gates: root positions of the two halves (excluding the cut itself).
  std::vector<int> left_context;
  std::vector<int> right_context;
};

std::vector<Gate> gates(const Forest& f);
// True iff every gate-free root is a singleton leaf with one shared index.
bool is_tautology_conclusion(const Forest& f);

// Builds an LK_H derivation with conclusion f.  Throws std::runtime_error
// when f is not a net.
Proof sequentialize(const Forest& f, const Theory& th);

struct DotOptions {
  bool show_types = true;
};
std::string to_dot(const Forest& f, const DotOptions& opt = {});

}  // namespace herbnet
