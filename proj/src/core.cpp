#include "kgsim/core.hpp"

#include <algorithm>
#include <stdexcept>

namespace kgsim {

Edge make_edge(InventorId a, InventorId b) {
  if (a == b) throw ConfigError("self-loop edge on inventor " + std::to_string(a));
  return a < b ? Edge{a, b} : Edge{b, a};
}

std::string inventor_label(InventorId id) { return "v" + std::to_string(id); }

std::set<ItemId> org_knowledge(const WorldState& world, OrgId org) {
  auto it = world.organizations.find(org);
  if (it == world.organizations.end()) {
    throw ConfigError("unknown organization id " + std::to_string(org));
  }
  std::set<ItemId> knowledge;
  for (InventorId member : it->second.members) {
    const auto& b = world.inventors.at(member).knowledge;
    knowledge.insert(b.begin(), b.end());
  }
  return knowledge;
}

MovementEvent move_inventor(WorldState& world, InventorId inventor, OrgId from,
                            OrgId to, int stage) {
  if (from == to) {
    throw std::logic_error("move_inventor: source equals destination");
  }
  auto& src = world.organizations.at(from);
  auto& dst = world.organizations.at(to);
  if (src.members.erase(inventor) == 0) {
    throw std::logic_error("move_inventor: inventor " +
                           std::to_string(inventor) + " not in organization " +
                           std::to_string(from));
  }
  std::erase_if(src.permanent_edges, [inventor](const Edge& e) {
    return e.first == inventor || e.second == inventor;
  });
  dst.members.insert(inventor);  // joins with no edges

  auto& inv = world.inventors.at(inventor);
  inv.org = to;
  inv.org_history.emplace_back(stage, to);
  return MovementEvent{stage, inventor, from, to};
}

}  // namespace kgsim
