#pragma once
// Per-step safety checks for the minimal strategy.

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "herbnet/net.hpp"
#include "herbnet/reduce.hpp"

namespace herbnet::testing {

inline std::vector<std::string> non_cut_types(const Forest& f) {
  std::vector<std::string> out;
  for (const auto& r : f.roots)
    if (r.kind != NodeKind::Cut) out.push_back(render(canonical(r.type.f)));
  std::sort(out.begin(), out.end());
  return out;
}

// Checks one reduction step against the invariants of a substitution record.
// Returns the number of violations.
inline int step_violations(const Forest& before, const Reduct& r, const Theory& th) {
  int bad = 0;
  const Forest& after = r.forest;
  const auto& rec = r.step.record;
  if (!is_herbrand_net(after, th)) ++bad;
  if (non_cut_types(after) != non_cut_types(before)) ++bad;

  std::map<int, const AeTerm*> old_roots, new_roots;
  for (const auto& t : before.roots) old_roots[t.id] = &t;
  for (const auto& t : after.roots) new_roots[t.id] = &t;
  std::set<int> image, tree_image;
  for (const auto& [nid, oid] : rec.root_map) {
    if (!new_roots.count(nid) || !old_roots.count(oid)) {
      ++bad;
      continue;
    }
    image.insert(oid);
    const AeTerm& n = *new_roots[nid];
    const AeTerm& o = *old_roots[oid];
    if (n.kind != NodeKind::Cut && n.type.kind != NetType::Witness) {
      if (!tree_image.insert(oid).second) ++bad;  // injective on expansion trees
      if (!alpha_equal(n.type.f, o.type.f)) ++bad;
    }
  }
  if (rec.root_map.size() != after.roots.size()) ++bad;
  for (const auto& [oid, t] : old_roots)
    if (oid != r.step.cut && !image.count(oid)) ++bad;  // onto every root but the reduced cut

  for (const auto& i : indices(after)) {
    auto it = rec.index_map.find(i);
    std::string old = it == rec.index_map.end() ? i : it->second;
    bool now = is_tautology(index_disjuncts(after, i), th).valid();
    bool was = is_tautology(index_disjuncts(before, old), th).valid();
    if (now != was) ++bad;
  }
  return bad;
}

// Replays the minimal strategy, checking every step.
inline int replay(const Forest& start, const Theory& th, std::optional<int> first, std::size_t& steps) {
  Forest f = start;
  int bad = 0;
  steps = 0;
  while (!cut_free(f) && steps < 10 * node_count(start) + 10) {
    Redex x = pick_redex(f, steps == 0 ? first : std::nullopt, Strategy::Minimal);
    Reduct r = reduce(f, x.cut, Strategy::Minimal);
    bad += step_violations(f, r, th);
    if (!detect_garbage(r.forest).empty()) ++bad;
    f = std::move(r.forest);
    ++steps;
  }
  if (!cut_free(f)) ++bad;
  return bad;
}

}  // namespace herbnet::testing
