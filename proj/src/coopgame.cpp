#include "kgsim/coopgame.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace kgsim {

int coalition_value(const std::set<InventorId>& coalition,
                    const WorldState& world) {
  std::set<ItemId> pool;
  for (InventorId member : coalition) {
    const auto& b = world.inventors.at(member).knowledge;
    pool.insert(b.begin(), b.end());
  }
  return static_cast<int>(pool.size());
}

ShapleyVector shapley_closed_form(const Organization& org,
                                  const WorldState& world) {
  // Owner counts over current members only.
  std::map<ItemId, int> owners;
  for (InventorId member : org.members) {
    for (ItemId item : world.inventors.at(member).knowledge) {
      owners[item] += 1;
    }
  }
  ShapleyVector phi;
  for (InventorId member : org.members) {
    double value = 0.0;
    for (ItemId item : world.inventors.at(member).knowledge) {
      value += 1.0 / owners.at(item);
    }
    phi.values[member] = value;
  }
  return phi;
}

ShapleyVector shapley_bruteforce(const Organization& org,
                                 const WorldState& world) {
  constexpr std::size_t kMaxMembers = 8;
  std::vector<InventorId> members(org.members.begin(), org.members.end());
  if (members.size() > kMaxMembers) {
    throw std::invalid_argument(
        "shapley_bruteforce: factorial enumeration capped at " +
        std::to_string(kMaxMembers) + " members, got " +
        std::to_string(members.size()));
  }

  ShapleyVector phi;
  for (InventorId member : members) phi.values[member] = 0.0;
  if (members.empty()) return phi;

  std::sort(members.begin(), members.end());
  long long permutations = 0;
  std::vector<InventorId> order = members;
  do {
    ++permutations;
    std::set<ItemId> pool;
    for (InventorId member : order) {
      std::size_t before = pool.size();
      const auto& b = world.inventors.at(member).knowledge;
      pool.insert(b.begin(), b.end());
      phi.values[member] += static_cast<double>(pool.size() - before);
    }
  } while (std::next_permutation(order.begin(), order.end()));

  for (auto& [id, value] : phi.values) value /= static_cast<double>(permutations);
  return phi;
}

}  // namespace kgsim
