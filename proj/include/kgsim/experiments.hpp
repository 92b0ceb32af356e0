#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "kgsim/engine.hpp"

namespace kgsim {

enum class TaskId { One, OneCompareK2, Two, Three };
enum class Variant { Random, Fixed };

// CLI spellings: "one", "one-k2", "two", "three".
std::optional<TaskId> parse_task(std::string_view name);
std::optional<Variant> parse_variant(std::string_view name);
const char* task_name(TaskId task);
const char* variant_name(Variant variant);

// Canonical topology and facilitator roster for each task:
//   one      5 inventors, edges {12,13,23,34,35,45}, tg1 with k=1
//            (random | fixed (1,4))
//   one-k2   same graph, tg1 with k=2 (random | fixed {(1,4),(1,5)})
//   two      10 inventors, complete blocks {1..5} and {5..10}, tg1 with k=5
//            (random | fixed {(4,6)..(4,10)})
//   three    two organizations with the task-two topology (ids 1..10 and
//            11..20), tg1 k=5 random and tg2 k=1 random, movement enabled.
//            The roster is fixed by the task; both variant labels build the
//            same configuration.
// All tasks default to 10 stages; callers override stages/seed afterwards.
SimulationConfig build_task(TaskId task, Variant variant);

struct StrategyOutcome {
  std::string variant;
  int final_total_knowledge = 0;
  std::map<std::string, int> final_rewards;
  int no_tg_knowledge = 0;
  int tg_knowledge = 0;  // sum of rewards == facilitator-attributed items

  int reward_total() const {
    int sum = 0;
    for (const auto& [id, r] : final_rewards) sum += r;
    return sum;
  }
};

// Two runs from the same seed (common random numbers), one per variant,
// with explicit winner verdicts. Ties are reported as "tie".
struct ComparisonReport {
  TaskId task = TaskId::One;
  int stages = 0;
  std::uint64_t seed = 0;
  StrategyOutcome random_outcome;
  StrategyOutcome fixed_outcome;
  std::string knowledge_winner;  // "random" | "fixed" | "tie"
  std::string reward_winner;
  RunResult random_run;
  RunResult fixed_run;
};

ComparisonReport compare_strategies(TaskId task, int stages,
                                    std::uint64_t seed);

struct VariantStats {
  std::string variant;
  double mean_knowledge = 0.0;
  double stddev_knowledge = 0.0;  // sample stddev, 0 when runs == 1
  double mean_reward = 0.0;
  double stddev_reward = 0.0;
  int min_knowledge = 0;
  int max_knowledge = 0;
  int min_reward = 0;
  int max_reward = 0;
};

// R independent runs per variant with seeds base_seed .. base_seed+R-1,
// aggregated in seed order; verdicts compare the means.
struct MonteCarloSummary {
  TaskId task = TaskId::One;
  int stages = 0;
  int runs = 0;
  std::uint64_t base_seed = 0;
  VariantStats random_stats;
  VariantStats fixed_stats;
  std::string knowledge_winner;
  std::string reward_winner;
};

MonteCarloSummary monte_carlo(TaskId task, int stages, int runs,
                              std::uint64_t base_seed);

}  // namespace kgsim
