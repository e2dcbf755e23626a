#pragma once

#include <string>
#include <vector>

#include "herbnet/aeterm.hpp"
#include "herbnet/taut.hpp"

namespace herbnet {

enum class Rule { Taut, ForallR, ExistsR, CExists, CProp, Cut };

std::string rule_name(Rule r);

// One inference of LK_H together with its conclusion.  `principal` is the
// root position of the introduced formula in the conclusion; `active` holds
// the root positions of the active formulas in the premises (for Cut, one
// per premise, for the contractions two in the single premise).
struct Proof {
  Rule rule = Rule::Taut;
  std::string index;
  std::string eigen;
  Term term;
  Forest conclusion;
  std::vector<Proof> premises;
  int principal = -1;
  std::vector<int> active;
};

struct ProofViolation {
  std::string kind;  // "rule", "tautology", "type", "strictness-i", "strictness-ii", "strictness-iii"
  std::string message;
  std::vector<int> path;  // premise positions from the root of the proof
};

struct ProofCheck {
  bool ok = false;
  std::vector<ProofViolation> violations;
  Forest conclusion;
};

ProofCheck check_proof(const Proof& p, const Theory& th, const GroundingConfig& cfg = {});

std::string render_proof(const Proof& p);
std::size_t proof_size(const Proof& p);
// The rules from the root upward, following the first premise.
std::vector<const Proof*> spine(const Proof& p);
// Checks the derivation with all term annotations erased: every node must be
// a plain sequent-calculus inference on the multisets of formulas.
bool check_shape(const Proof& p, std::string* why = nullptr);

}  // namespace herbnet
