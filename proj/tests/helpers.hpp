#pragma once

#include <map>
#include <set>
#include <vector>

#include "kgsim/core.hpp"
#include "kgsim/engine.hpp"

namespace kgsim::test {

struct TestOrg {
  OrgId id = 1;
  std::map<InventorId, std::set<ItemId>> knowledge;  // member -> B_i
  std::vector<Edge> edges;
};

// Hand-built world for unit tests. Items are materialized densely up to the
// largest referenced id; origins default to the first owner's organization
// unless overridden.
inline WorldState make_world(const std::vector<TestOrg>& orgs,
                             std::map<ItemId, OrgId> origins = {},
                             std::uint64_t seed = 1) {
  WorldState world(seed);
  ItemId max_item = -1;
  for (const TestOrg& spec : orgs) {
    Organization org;
    org.id = spec.id;
    for (const auto& [member, knowledge] : spec.knowledge) {
      org.members.insert(member);
      Inventor inv;
      inv.id = member;
      inv.org = spec.id;
      inv.org_history.emplace_back(0, spec.id);
      inv.knowledge = knowledge;
      for (ItemId item : knowledge) {
        max_item = std::max(max_item, item);
        origins.emplace(item, spec.id);  // keeps an existing override
      }
      world.inventors.emplace(member, std::move(inv));
    }
    for (const Edge& e : spec.edges) {
      org.permanent_edges.insert(make_edge(e.first, e.second));
    }
    world.organizations.emplace(spec.id, std::move(org));
  }
  for (ItemId id = 0; id <= max_item; ++id) {
    auto it = origins.find(id);
    world.items.push_back(KnowledgeItem{id, it != origins.end() ? it->second : 1});
  }
  return world;
}

// Independent clique-count oracle: tries every non-empty vertex subset and
// checks pairwise connectivity directly. Deliberately a different algorithm
// from the engine's DFS enumeration.
inline int clique_count_bruteforce(const Organization& org,
                                   const TempEdgeSet& temp, int min_size) {
  std::vector<InventorId> members(org.members.begin(), org.members.end());
  const std::size_t n = members.size();
  int count = 0;
  for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
    std::vector<InventorId> subset;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1UL << i)) subset.push_back(members[i]);
    }
    if (static_cast<int>(subset.size()) < min_size) continue;
    bool clique = true;
    for (std::size_t i = 0; i < subset.size() && clique; ++i) {
      for (std::size_t j = i + 1; j < subset.size(); ++j) {
        const Edge e = make_edge(subset[i], subset[j]);
        if (org.permanent_edges.count(e) == 0 && !temp.contains(e)) {
          clique = false;
          break;
        }
      }
    }
    if (clique) ++count;
  }
  return count;
}

}  // namespace kgsim::test
