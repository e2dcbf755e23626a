#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "herbnet/formula.hpp"

namespace herbnet {

struct GroundingConfig {
  int depth = 1;
  // Deepest grounding tried before giving up; values below depth mean depth.
  int max_depth = 0;
  bool extra_constant = true;
  std::size_t max_instances = 50000;
};

enum class TautStatus { Valid, Invalid, Unknown };

struct TautResult {
  TautStatus status = TautStatus::Unknown;
  // Falsifying assignment to the positive atoms (Invalid only).
  std::vector<std::pair<Qff, bool>> assignment;
  std::vector<Qff> instances;
  int depth_used = 0;
  std::size_t decisions = 0;
  std::size_t conflicts = 0;
  std::string reason;

  bool valid() const { return status == TautStatus::Valid; }
};

// Herbrand universe fragment: subterms of the seeds closed under the
// signature's functions up to `depth` applications, in size-then-text order.
std::vector<Term> ground_terms(const Signature& sig, const std::set<Term>& seeds, int depth, bool extra_constant,
                               std::size_t cap = 100000);

std::vector<Qff> ground_axiom_instances(const Theory& theory, const std::set<Term>& seed_terms, int depth,
                                        std::size_t cap = 50000, bool* truncated = nullptr);

// Decides whether (AND of axiom instances) -> OR of disjuncts is valid.
TautResult is_tautology(const std::vector<Qff>& disjuncts, const Theory& theory, const GroundingConfig& cfg = {});

// Plain propositional satisfiability of a set of quantifier-free formulas,
// atoms compared structurally.  Returns a model over the atoms if one exists.
bool satisfiable(const std::vector<Qff>& fs, std::vector<std::pair<Qff, bool>>* model = nullptr,
                 std::size_t* decisions = nullptr, std::size_t* conflicts = nullptr);

// Truth value of q under an atom assignment (missing atoms are false).
bool evaluate(const Qff& q, const std::vector<std::pair<Qff, bool>>& assignment);

}  // namespace herbnet
