#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "herbnet/aeterm.hpp"
#include "herbnet/net.hpp"

namespace herbnet {

enum class StepKind { Prop, Comm, Dup };
enum class Strategy { Minimal, Empire, Dependent };

std::string step_name(StepKind k);
std::string strategy_name(Strategy s);
// Accepts "minimal", "empire", "dependent"; throws std::invalid_argument otherwise.
Strategy parse_strategy(const std::string& s);

// How roots and indices of a reduct relate to those of the redex.
struct SubstitutionRecord {
  std::map<int, int> root_map;  // new root id -> old root id
  std::map<std::string, std::string, IndexLess> index_map;  // new index -> old index
};

struct Measures {
  std::size_t size = 0;   // alpha, epsilon and cut nodes
  std::size_t wrank = 0;  // sum of (width - 1) over sums and leaves
  std::size_t cuts = 0;
};
Measures measures(const Forest& f);

std::size_t cut_rank(const AeTerm& cut);
// Width of the existential side of a quantifier cut, 0 otherwise.
std::size_t cut_width(const AeTerm& cut);

struct ReductionStep {
  StepKind kind = StepKind::Prop;
  int cut = -1;                 // cut node id in the redex
  std::vector<int> duplicated;  // Dup: node ids of the copied subnet
  int chosen = -1;              // Dup: id of the witness split off on its own
  std::map<std::string, std::string> tau0, tau1;  // Dup: renamings of variables and indices
  SubstitutionRecord record;
  Measures after;
};

struct Reduct {
  Forest forest;
  ReductionStep step;
};

// Each throws PreconditionError when the cut does not have the right shape.
Reduct reduce_prop(const Forest& f, int cut);
Reduct reduce_comm(const Forest& f, int cut);
Reduct reduce_dup(const Forest& f, int cut, Strategy strategy = Strategy::Minimal);
// Dispatches on the shape of the cut.
Reduct reduce(const Forest& f, int cut, Strategy strategy = Strategy::Minimal);

// Node ids of the subforest Dup copies for the given alpha node.
std::vector<int> dup_subnet(const Forest& f, int alpha, Strategy strategy);

struct Redex {
  int cut = -1;
  StepKind kind = StepKind::Prop;
};
// Comm, then Prop, then Dup, lowest id first.  Under the minimal and empire
// strategies the Dup cut must be <<-maximal among the Dup cuts.  Throws PreconditionError
// when f has no cuts or none is reducible.
Redex pick_redex(const Forest& f, std::optional<int> forced = std::nullopt,
                 Strategy strategy = Strategy::Minimal);

enum class NormalStatus { Normal, Budget, Garbage, Stuck };
std::string status_name(NormalStatus s);

struct NormalizeOptions {
  Strategy strategy = Strategy::Minimal;
  std::size_t max_steps = 1000;
  std::optional<int> first_cut;  // forces the first redex
  bool keep_states = false;
};

struct Trace {
  Measures initial;
  std::vector<ReductionStep> steps;
  std::vector<Forest> states;  // states[k] is the forest after step k (keep_states)
};

struct NormalizeResult {
  Forest forest;
  Trace trace;
  NormalStatus status = NormalStatus::Normal;
  std::string message;
};

NormalizeResult normalize(const Forest& f, const NormalizeOptions& opt = {});

// Breadth-first search over every choice of redex for a state satisfying
// `goal`.  Returns the cut ids reduced along the way, or nullopt once
// max_states distinct states have been seen without success.
std::optional<std::vector<int>> find_reduction(const Forest& f, Strategy strategy,
                                               const std::function<bool(const Forest&)>& goal,
                                               std::size_t max_states = 20000);

// Cuts of the shape a[a].t >< (... + e[M].s + ...) with a free in M.
std::vector<int> detect_garbage(const Forest& f);

// Witness terms of all cut-free roots, one entry per epsilon node.
std::vector<Term> witnesses(const Forest& f);
bool cut_free(const Forest& f);

// Whether the roots of `pattern` map injectively onto roots of `host`
// under an injective renaming of eigenvariables and indices.  Host sums
// may have extra members, host leaves extra indices, and cut sides may be
// swapped.
bool embeds(const Forest& pattern, const Forest& host);

}  // namespace herbnet
