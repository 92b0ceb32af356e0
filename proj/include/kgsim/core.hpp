#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kgsim/errors.hpp"
#include "kgsim/invariants.hpp"
#include "kgsim/rng.hpp"

namespace kgsim {

using InventorId = int;
using OrgId = int;
using ItemId = int;

// Undirected edge, stored canonically as (min, max).
using Edge = std::pair<InventorId, InventorId>;

Edge make_edge(InventorId a, InventorId b);

// Human-facing label for an inventor ("v7"). Ids are the identity; labels
// are presentation only.
std::string inventor_label(InventorId id);

struct KnowledgeItem {
  ItemId id = 0;       // dense, assigned in creation order
  OrgId origin = 0;    // organization of first creation, immutable
};

struct Inventor {
  InventorId id = 0;
  OrgId org = 0;                      // current membership
  std::set<ItemId> knowledge;         // B_i, persists across moves
  std::vector<std::pair<int, OrgId>> org_history;  // (stage, org) transitions
};

struct Organization {
  OrgId id = 0;
  std::set<InventorId> members;
  std::set<Edge> permanent_edges;
};

// Temporary edges materialized by a facilitator for one stage. Always
// disjoint from the organization's permanent edges and empty between stages.
struct TempEdgeSet {
  std::string owner;
  std::set<Edge> edges;

  bool contains(const Edge& e) const { return edges.count(e) > 0; }
  void clear() {
    owner.clear();
    edges.clear();
  }
};

struct MovementEvent {
  int stage = 0;
  InventorId inventor = 0;
  OrgId from = 0;
  OrgId to = 0;
};

struct WorldState {
  std::map<OrgId, Organization> organizations;
  std::map<InventorId, Inventor> inventors;
  std::vector<KnowledgeItem> items;  // item id == index
  InvariantCounters counters;
  int stage_index = 0;  // number of completed stages
  Rng rng;
  TempEdgeSet temp_edges;  // live only inside a stage

  explicit WorldState(std::uint64_t seed = 0) : rng(seed) {}

  int org_count() const { return static_cast<int>(organizations.size()); }
};

// K_l: union of knowledge over the organization's current members.
std::set<ItemId> org_knowledge(const WorldState& world, OrgId org);

// Moves an inventor between organizations: drops it and its incident
// permanent edges from `from`, adds it to `to` with no edges. Id and
// knowledge set are untouched.
MovementEvent move_inventor(WorldState& world, InventorId inventor, OrgId from,
                            OrgId to, int stage);

}  // namespace kgsim
