#include "herbnet/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace herbnet {

using nlohmann::json;

namespace {

json theory_json(const Theory& th) {
  json j;
  j["functions"] = json::object();
  for (const auto& [f, n] : th.sig.functions) j["functions"][f] = n;
  j["predicates"] = json::object();
  for (const auto& [p, n] : th.sig.predicates) j["predicates"][p] = n;
  j["axioms"] = json::array();
  for (const auto& a : th.axioms) j["axioms"].push_back(render(a));
  return j;
}

const char* kind_name(NetType::Kind k) {
  switch (k) {
    case NetType::Logical:
      return "logical";
    case NetType::Witness:
      return "witness";
    case NetType::CutType:
      return "cut";
  }
  return "logical";
}

json forest_json(const Forest& f) {
  json roots = json::array();
  for (const auto& r : f.roots)
    roots.push_back({{"term", render(r)}, {"type", render(r.type.f)}, {"kind", kind_name(r.type.kind)}});
  return roots;
}

std::string field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) throw ParseError(std::string("missing string field '") + key + "'", 0);
  return j[key].get<std::string>();
}

void declare(std::map<std::string, int>& table, const std::string& name, const json& n) {
  if (!n.is_number_integer() || n.get<int>() < 0) throw ParseError("arity of '" + name + "' must be a natural number", 0);
  auto [it, fresh] = table.emplace(name, n.get<int>());
  if (!fresh && it->second != n.get<int>()) throw ParseError("conflicting arity for '" + name + "'", 0);
}

void read_theory(const json& t, Theory& th) {
  if (!t.is_object()) throw ParseError("theory must be an object", 0);
  if (t.contains("functions"))
    for (const auto& [name, n] : t["functions"].items()) declare(th.sig.functions, name, n);
  if (t.contains("predicates"))
    for (const auto& [name, n] : t["predicates"].items()) declare(th.sig.predicates, name, n);
  if (t.contains("axioms"))
    for (const auto& a : t["axioms"]) {
      if (!a.is_string()) throw ParseError("axioms must be strings", 0);
      th.axioms.push_back(parse_qff(a.get<std::string>(), th.sig));
    }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Theory parse_theory(std::string_view text, const Theory& base) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  Theory th = base;
  read_theory(j, th);
  return th;
}

Theory load_theory(const std::string& path, const Theory& base) { return parse_theory(slurp(path), base); }

NetFile parse_net(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  // a normalize report carries the net under "result"
  if (j.is_object() && !j.contains("roots") && j.contains("result") && j["result"].is_object()) j = j["result"];
  if (!j.is_object() || !j.contains("roots") || !j["roots"].is_array())
    throw ParseError("net file needs a 'roots' array", 0);
  NetFile out;
  Signature& sig = out.theory.sig;
  if (j.contains("theory")) read_theory(j["theory"], out.theory);
  std::vector<std::pair<AeTerm, NetType>> roots;
  for (const auto& r : j["roots"]) {
    AeTerm t = parse_aeterm(field(r, "term"), sig);
    Formula f = parse_formula(field(r, "type"), sig);
    std::string kind = r.contains("kind") ? field(r, "kind") : (t.kind == NodeKind::Cut ? "cut" : "logical");
    NetType T;
    if (kind == "logical")
      T = NetType::logical(f);
    else if (kind == "witness")
      T = NetType::witness(f);
    else if (kind == "cut")
      T = NetType::cut(f);
    else
      throw ParseError("unknown root kind '" + kind + "'", 0);
    roots.emplace_back(std::move(t), std::move(T));
  }
  out.forest = make_forest(std::move(roots));
  return out;
}

NetFile load_net(const std::string& path) { return parse_net(slurp(path)); }

std::string net_to_json(const Forest& f, const Theory& th, int indent) {
  json j;
  j["roots"] = forest_json(f);
  j["theory"] = theory_json(th);
  return j.dump(indent);
}

std::string theory_to_json(const Theory& th, int indent) { return theory_json(th).dump(indent); }

namespace {
json proof_json(const Proof& p) {
  json j;
  j["rule"] = rule_name(p.rule);
  json params = json::object();
  if (p.rule == Rule::Taut) params["index"] = p.index;
  if (p.rule == Rule::ForallR) params["eigenvariable"] = p.eigen;
  if (p.rule == Rule::ExistsR) params["term"] = render(p.term);
  if (p.principal >= 0) params["principal"] = p.principal;
  if (!p.active.empty()) params["active"] = p.active;
  j["params"] = params;
  j["conclusion"] = forest_json(p.conclusion);
  j["premises"] = json::array();
  for (const auto& q : p.premises) j["premises"].push_back(proof_json(q));
  return j;
}
}  // namespace

std::string proof_to_json(const Proof& p, int indent) { return proof_json(p).dump(indent); }

std::string trace_to_json(const Trace& t, int indent) {
  json out = json::array();
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    const ReductionStep& s = t.steps[k];
    out.push_back({{"step", k + 1},
                   {"kind", step_name(s.kind)},
                   {"cut", s.cut},
                   {"measures", {{"size", s.after.size}, {"wrank", s.after.wrank}}},
                   {"duplicated", s.duplicated}});
  }
  return out.dump(indent);
}

std::string herbrand_to_json(const HerbrandProof& hp, int indent) {
  json j;
  j["expansion"] = render(hp.expansion);
  j["prenexification"] = render(hp.prenexification);
  j["sigma"] = json::array();
  for (const auto& t : hp.sigma) j["sigma"].push_back(render(t));
  return j.dump(indent);
}

}  // namespace herbnet
