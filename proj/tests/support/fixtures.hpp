#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "herbnet/io.hpp"

namespace herbnet::testing {

inline std::string fixture_path(const std::string& name) { return std::string(HERBNET_FIXTURES) + "/" + name + ".net"; }

inline NetFile fixture(const std::string& name) { return load_net(fixture_path(name)); }

inline const char* const kCorpus[] = {"drinker", "prop_cut", "shared_eigen", "escaping_eigen", "strict_cut", "naked_witness", "nonconfluent", "empire_loop"};

struct RootSpec {
  std::string term, type, kind = "logical";
};

// A net from root texts; `functions` declares constants and function symbols.
inline NetFile net_of(const std::vector<RootSpec>& roots, const std::map<std::string, int>& functions = {{"c", 0}},
                      const std::vector<std::string>& axioms = {}) {
  nlohmann::json j;
  j["roots"] = nlohmann::json::array();
  for (const auto& r : roots) j["roots"].push_back({{"term", r.term}, {"type", r.type}, {"kind", r.kind}});
  j["theory"] = {{"functions", functions}, {"predicates", nlohmann::json::object()}, {"axioms", axioms}};
  return parse_net(j.dump());
}

// Cut roots in file order.
inline std::vector<int> cut_ids(const Forest& f) {
  std::vector<int> out;
  for (const auto& r : f.roots)
    if (r.kind == NodeKind::Cut) out.push_back(r.id);
  return out;
}

}  // namespace herbnet::testing
