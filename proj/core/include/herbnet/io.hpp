#pragma once

#include <string>
#include <string_view>

#include "herbnet/aeterm.hpp"
#include "herbnet/herbrand.hpp"
#include "herbnet/reduce.hpp"
#include "herbnet/sequent.hpp"

namespace herbnet {

// A net file: typed roots plus the theory they are checked against.
//
//   {"roots":  [{"term": "...", "type": "...", "kind": "logical|witness|cut"}],
//    "theory": {"functions": {"s": 1}, "predicates": {"P": 1}, "axioms": ["..."]}}
//
// For cuts "type" is the formula on the left of the cut.
struct NetFile {
  Forest forest;
  Theory theory;
};

// Accepts a net file or a normalize JSON report (its "result").  Throws
// ParseError on malformed JSON or terms, TypeError on ill-typed roots.
NetFile parse_net(std::string_view json_text);
NetFile load_net(const std::string& path);
// A theory file has the shape of the "theory" member above.  The result
// extends `base`; conflicting arities are a ParseError.
Theory parse_theory(std::string_view json_text, const Theory& base = {});
Theory load_theory(const std::string& path, const Theory& base = {});
std::string net_to_json(const Forest& f, const Theory& th, int indent = 2);
std::string theory_to_json(const Theory& th, int indent = 2);

std::string proof_to_json(const Proof& p, int indent = 2);

// [{"step", "kind", "cut", "measures": {"size", "wrank"}, "duplicated": [ids]}]
std::string trace_to_json(const Trace& t, int indent = 2);

// {"expansion", "prenexification", "sigma": [terms]}
std::string herbrand_to_json(const HerbrandProof& hp, int indent = 2);

}  // namespace herbnet
