#pragma once

#include <map>
#include <set>

#include "kgsim/core.hpp"

namespace kgsim {

// Shapley values of one organization's recommendation game. Efficiency:
// the values sum to |K_l| (up to 1e-9).
struct ShapleyVector {
  std::map<InventorId, double> values;

  double sum() const {
    double s = 0.0;
    for (const auto& [id, v] : values) s += v;
    return s;
  }
};

// v(S) = |union_{i in S} B_i|.
int coalition_value(const std::set<InventorId>& coalition,
                    const WorldState& world);

// phi_i = sum over x in B_i of 1 / (number of current members owning x).
// Ownership counts use current organization membership only.
ShapleyVector shapley_closed_form(const Organization& org,
                                  const WorldState& world);

// Oracle: averages marginal contributions of v over all member orderings.
// Factorial in the member count; throws std::invalid_argument above 8
// members. Kept independent of the closed form so the two can cross-check.
ShapleyVector shapley_bruteforce(const Organization& org,
                                 const WorldState& world);

}  // namespace kgsim
