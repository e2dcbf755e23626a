#pragma once

#include <map>
#include <string>
#include <vector>

#include "herbnet/aeterm.hpp"
#include "herbnet/taut.hpp"

namespace herbnet {

// Negation normal form formula with quantifiers anywhere.  Quantifier-free
// parts are kept as a single Qff leaf.
struct GeneralFormula {
  enum Kind { Matrix, And, Or, Forall, Exists };
  Kind kind = Matrix;
  Qff matrix;
  std::string var;
  std::vector<GeneralFormula> kids;

  static GeneralFormula leaf(Qff q);
  static GeneralFormula conj(GeneralFormula a, GeneralFormula b);
  static GeneralFormula disj(GeneralFormula a, GeneralFormula b);
  static GeneralFormula forall(std::string x, GeneralFormula body);
  static GeneralFormula exists(std::string x, GeneralFormula body);

  bool operator==(const GeneralFormula& o) const;
};

std::string render(const GeneralFormula& g);
GeneralFormula from_prenex(const Formula& a);
// Bound variables in pre-order.
std::vector<std::string> binders(const GeneralFormula& g);
std::set<std::string> free_vars(const GeneralFormula& g);
// The formula with every quantifier deleted.
Qff strip_quantifiers(const GeneralFormula& g);
// Renames binders so each is distinct and not free in g.
GeneralFormula rename_apart(const GeneralFormula& g, NameSupply& supply);

// Labels every witness node of t with a distinct fresh variable u1, u2, ...,
// children before parents and left before right.
std::map<int, std::string> label_witnesses(const AeTerm& t, const std::set<std::string>& avoid);

// Expansion read off a cut-free typed tree; a witness labelled u contributes
// exists u. Deep(t : A[x:=u]).  Throws PreconditionError on cuts or
// unlabelled witnesses.
GeneralFormula deep(const AeTerm& t, const Formula& type, const std::map<int, std::string>& labels);

// Pulls the quantifiers of g to the front in the order given by `schedule`
// (a permutation of binders(g)).  Throws PreconditionError if some
// quantifier is scheduled before one it lies under, or g's binders are not
// distinct and fresh.
Formula prenexify(const GeneralFormula& g, const std::vector<std::string>& schedule);
// Left-first schedule.
Formula prenexify(const GeneralFormula& g);

struct HerbrandProof {
  GeneralFormula expansion;
  Formula prenexification;
  std::vector<Term> sigma;
};

// Throws PreconditionError unless f is a cut-free Herbrand net with one root.
HerbrandProof extract_herbrand_proof(const Forest& f, const Theory& th, const GroundingConfig& cfg = {});

struct HerbrandCheck {
  bool ok = false;
  std::string clause;  // "expansion", "prenexification", "witness", "dependency", "tautology"
  std::string message;
};

HerbrandCheck verify_herbrand_proof(const Formula& a, const HerbrandProof& hp, const Theory& th,
                                    const GroundingConfig& cfg = {});

// The matrix of the prenexification with sigma substituted.
Qff herbrand_instance(const HerbrandProof& hp);

}  // namespace herbnet
