#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kgsim {

struct WorldState;
struct StageRecord;

// Accounting counters behind the correctness check: every created item is
// attributed either to organic creation (no_tg_knowledge) or to exactly one
// facilitator's reward tally.
struct InvariantCounters {
  int no_tg_knowledge = 0;
  std::map<std::string, int> rewards;  // facilitator id -> cumulative reward

  int reward_total() const {
    int sum = 0;
    for (const auto& [id, r] : rewards) sum += r;
    return sum;
  }
};

// Called exactly once per stage in which an item was created. Increments the
// facilitator's tally when the selected clique contained one of its temporary
// edges, otherwise the organic counter.
InvariantCounters record_creation(InvariantCounters counters,
                                  bool tg_edge_in_clique,
                                  const std::optional<std::string>& tg);

struct CorrectnessVerdict {
  bool held = false;
  long long lhs = 0;  // |union of all inventors' knowledge sets|
  long long rhs = 0;  // no_tg_knowledge + sum of rewards
};

// The per-stage check: |union_v B_v| == no_tg_knowledge + sum_tg r(tg).
// The union runs over every inventor globally, so movement between
// organizations never changes the left-hand side.
CorrectnessVerdict check_correctness_invariant(const WorldState& world);

struct Violation {
  std::string code;
  std::string detail;
};

// Structural audits: membership disjointness, edge endpoint validity,
// temp-edge hygiene between stages, item id density, org field consistency.
// Empty result means clean.
std::vector<Violation> check_structural_invariants(const WorldState& world);

// Shadow first-write registry for origin immutability. Feed it the world
// after every stage; it records each item's origin the first time it appears
// and flags any later rewrite.
class OriginRegistry {
 public:
  std::vector<Violation> observe(const WorldState& world);

 private:
  std::map<int, int> first_origin_;
};

// Trace review over a finished run: every recorded leave/creation
// probability must lie in [0,1], with the |K_l| = 0 edge cases pinned to
// exactly 0 (leave) and exactly 1 (creation).
std::vector<Violation> check_probability_bounds(
    const std::vector<StageRecord>& records);

}  // namespace kgsim
