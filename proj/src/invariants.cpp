#include "kgsim/invariants.hpp"

#include <sstream>
#include <stdexcept>

#include "kgsim/core.hpp"
#include "kgsim/engine.hpp"

namespace kgsim {

namespace {

std::string edge_str(const Edge& e) {
  return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
}

}  // namespace

InvariantCounters record_creation(InvariantCounters counters,
                                  bool tg_edge_in_clique,
                                  const std::optional<std::string>& tg) {
  if (tg_edge_in_clique) {
    if (!tg) {
      throw std::logic_error(
          "record_creation: clique had a temporary edge but no facilitator id");
    }
    counters.rewards[*tg] += 1;
  } else {
    counters.no_tg_knowledge += 1;
  }
  return counters;
}

CorrectnessVerdict check_correctness_invariant(const WorldState& world) {
  // Count distinct items across all inventors globally; deliberately not
  // derived from the item counter so it can catch lost or duplicated items.
  std::vector<bool> seen(world.items.size(), false);
  long long lhs = 0;
  for (const auto& [id, inventor] : world.inventors) {
    for (ItemId item : inventor.knowledge) {
      if (item < 0 || item >= static_cast<ItemId>(seen.size())) {
        ++lhs;  // unknown id still counts toward the union; audits flag it
        continue;
      }
      if (!seen[item]) {
        seen[item] = true;
        ++lhs;
      }
    }
  }
  const long long rhs =
      world.counters.no_tg_knowledge + world.counters.reward_total();
  return CorrectnessVerdict{lhs == rhs, lhs, rhs};
}

std::vector<Violation> check_structural_invariants(const WorldState& world) {
  std::vector<Violation> out;

  // Membership disjointness + org field consistency.
  std::map<InventorId, OrgId> seen_in;
  for (const auto& [org_id, org] : world.organizations) {
    for (InventorId member : org.members) {
      auto [it, inserted] = seen_in.emplace(member, org_id);
      if (!inserted) {
        out.push_back({"org-disjointness",
                       "inventor " + std::to_string(member) +
                           " present in organizations " +
                           std::to_string(it->second) + " and " +
                           std::to_string(org_id)});
      }
      auto inv = world.inventors.find(member);
      if (inv == world.inventors.end()) {
        out.push_back({"membership-consistency",
                       "organization " + std::to_string(org_id) +
                           " lists unknown inventor " + std::to_string(member)});
      } else if (inv->second.org != org_id) {
        out.push_back({"membership-consistency",
                       "inventor " + std::to_string(member) + " is in " +
                           std::to_string(org_id) + " but carries org " +
                           std::to_string(inv->second.org)});
      }
    }
    // Edge endpoint validity.
    for (const Edge& e : org.permanent_edges) {
      if (e.first == e.second) {
        out.push_back({"edge-validity", "self-loop " + edge_str(e)});
      }
      if (org.members.count(e.first) == 0 || org.members.count(e.second) == 0) {
        out.push_back({"edge-validity",
                       "edge " + edge_str(e) + " has a non-member endpoint in " +
                           std::to_string(org_id)});
      }
    }
  }
  for (const auto& [id, inventor] : world.inventors) {
    if (seen_in.find(id) == seen_in.end()) {
      out.push_back({"membership-consistency",
                     "inventor " + std::to_string(id) +
                         " belongs to no organization"});
    }
  }

  // Temp-edge hygiene between stages.
  if (!world.temp_edges.edges.empty()) {
    out.push_back({"temp-edge-hygiene",
                   std::to_string(world.temp_edges.edges.size()) +
                       " temporary edges survived the stage"});
  }

  // Item id density: items[i].id == i.
  for (std::size_t i = 0; i < world.items.size(); ++i) {
    if (world.items[i].id != static_cast<ItemId>(i)) {
      out.push_back({"item-id-density",
                     "item at index " + std::to_string(i) + " has id " +
                         std::to_string(world.items[i].id)});
    }
  }

  // Knowledge references resolve to known items.
  for (const auto& [id, inventor] : world.inventors) {
    for (ItemId item : inventor.knowledge) {
      if (item < 0 || item >= static_cast<ItemId>(world.items.size())) {
        out.push_back({"knowledge-reference",
                       "inventor " + std::to_string(id) +
                           " holds unknown item " + std::to_string(item)});
      }
    }
  }

  return out;
}

std::vector<Violation> OriginRegistry::observe(const WorldState& world) {
  std::vector<Violation> out;
  for (const KnowledgeItem& item : world.items) {
    auto [it, inserted] = first_origin_.emplace(item.id, item.origin);
    if (!inserted && it->second != item.origin) {
      out.push_back({"origin-immutability",
                     "item " + std::to_string(item.id) + " origin rewritten " +
                         std::to_string(it->second) + " -> " +
                         std::to_string(item.origin)});
    }
  }
  return out;
}

std::vector<Violation> check_probability_bounds(
    const std::vector<StageRecord>& records) {
  std::vector<Violation> out;
  auto flag = [&out](int stage, const std::string& what) {
    out.push_back({"probability-bounds",
                   "stage " + std::to_string(stage) + ": " + what});
  };
  for (const StageRecord& rec : records) {
    if (rec.leave_probability) {
      const double p = *rec.leave_probability;
      if (p < 0.0 || p > 1.0) flag(rec.stage, "P_leave out of [0,1]");
      if (rec.leave_pool && *rec.leave_pool == 0 && p != 0.0) {
        flag(rec.stage, "P_leave must be exactly 0 when |K_l| = 0");
      }
    }
    if (rec.creation_probability_value) {
      const double p = *rec.creation_probability_value;
      if (p < 0.0 || p > 1.0) flag(rec.stage, "P_new out of [0,1]");
      if (rec.creation_pool && *rec.creation_pool == 0 && p != 1.0) {
        flag(rec.stage, "P_new must be exactly 1 when |K_l| = 0");
      }
    }
  }
  return out;
}

}  // namespace kgsim
