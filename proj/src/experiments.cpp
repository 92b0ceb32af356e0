#include "kgsim/experiments.hpp"

#include <algorithm>
#include <cmath>

namespace kgsim {

namespace {

// Complete blocks {1..5} and {5..10}, shifted by `offset` for org ids past
// the first. v5 bridges the two blocks.
OrgConfig two_block_org(OrgId id, InventorId offset) {
  OrgConfig org;
  org.id = id;
  for (InventorId i = 1; i <= 10; ++i) org.members.push_back(offset + i);
  for (InventorId a = 1; a <= 5; ++a) {
    for (InventorId b = a + 1; b <= 5; ++b) {
      org.edges.emplace_back(offset + a, offset + b);
    }
  }
  for (InventorId a = 5; a <= 10; ++a) {
    for (InventorId b = a + 1; b <= 10; ++b) {
      org.edges.emplace_back(offset + a, offset + b);
    }
  }
  return org;
}

OrgConfig task_one_org() {
  OrgConfig org;
  org.id = 1;
  org.members = {1, 2, 3, 4, 5};
  org.edges = {{1, 2}, {1, 3}, {2, 3}, {3, 4}, {3, 5}, {4, 5}};
  return org;
}

FacilitatorSpec random_tg(std::string id, OrgId org, int budget) {
  FacilitatorSpec spec;
  spec.id = std::move(id);
  spec.org = org;
  spec.budget = budget;
  spec.strategy = StrategyKind::RandomUnconnectedPairs;
  return spec;
}

FacilitatorSpec fixed_tg(std::string id, OrgId org, std::vector<Edge> edges) {
  FacilitatorSpec spec;
  spec.id = std::move(id);
  spec.org = org;
  spec.budget = static_cast<int>(edges.size());
  spec.strategy = StrategyKind::FixedEdges;
  spec.fixed_edges = std::move(edges);
  return spec;
}

std::string winner(long long random_score, long long fixed_score) {
  if (random_score > fixed_score) return "random";
  if (fixed_score > random_score) return "fixed";
  return "tie";
}

std::string winner(double random_score, double fixed_score) {
  if (random_score > fixed_score) return "random";
  if (fixed_score > random_score) return "fixed";
  return "tie";
}

StrategyOutcome summarize(const RunResult& run, Variant variant) {
  StrategyOutcome out;
  out.variant = variant_name(variant);
  const Snapshot& final_snap = run.series.back();
  out.final_total_knowledge = final_snap.total_knowledge;
  out.final_rewards = final_snap.rewards;
  out.no_tg_knowledge = final_snap.no_tg_knowledge;
  out.tg_knowledge = out.reward_total();
  return out;
}

struct Accumulator {
  long long count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  int min_value = 0;
  int max_value = 0;

  void add(int value) {
    if (count == 0) {
      min_value = max_value = value;
    } else {
      min_value = std::min(min_value, value);
      max_value = std::max(max_value, value);
    }
    ++count;
    const double delta = value - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (value - mean);
  }

  double stddev() const {
    return count > 1 ? std::sqrt(m2 / static_cast<double>(count - 1)) : 0.0;
  }
};

}  // namespace

std::optional<TaskId> parse_task(std::string_view name) {
  if (name == "one") return TaskId::One;
  if (name == "one-k2") return TaskId::OneCompareK2;
  if (name == "two") return TaskId::Two;
  if (name == "three") return TaskId::Three;
  return std::nullopt;
}

std::optional<Variant> parse_variant(std::string_view name) {
  if (name == "random") return Variant::Random;
  if (name == "fixed") return Variant::Fixed;
  return std::nullopt;
}

const char* task_name(TaskId task) {
  switch (task) {
    case TaskId::One: return "one";
    case TaskId::OneCompareK2: return "one-k2";
    case TaskId::Two: return "two";
    case TaskId::Three: return "three";
  }
  return "?";
}

const char* variant_name(Variant variant) {
  return variant == Variant::Random ? "random" : "fixed";
}

SimulationConfig build_task(TaskId task, Variant variant) {
  SimulationConfig config;
  config.stages = 10;
  switch (task) {
    case TaskId::One:
      config.organizations = {task_one_org()};
      config.facilitators = {variant == Variant::Random
                                 ? random_tg("tg1", 1, 1)
                                 : fixed_tg("tg1", 1, {{1, 4}})};
      break;
    case TaskId::OneCompareK2:
      config.organizations = {task_one_org()};
      config.facilitators = {variant == Variant::Random
                                 ? random_tg("tg1", 1, 2)
                                 : fixed_tg("tg1", 1, {{1, 4}, {1, 5}})};
      break;
    case TaskId::Two:
      config.organizations = {two_block_org(1, 0)};
      config.facilitators = {
          variant == Variant::Random
              ? random_tg("tg1", 1, 5)
              : fixed_tg("tg1", 1,
                         {{4, 6}, {4, 7}, {4, 8}, {4, 9}, {4, 10}})};
      break;
    case TaskId::Three:
      // The roster is part of the task definition; the variant selects
      // nothing here.
      config.organizations = {two_block_org(1, 0), two_block_org(2, 10)};
      config.facilitators = {random_tg("tg1", 1, 5), random_tg("tg2", 2, 1)};
      break;
  }
  config.label =
      std::string(task_name(task)) + "-" + variant_name(variant);
  return config;
}

ComparisonReport compare_strategies(TaskId task, int stages,
                                    std::uint64_t seed) {
  ComparisonReport report;
  report.task = task;
  report.stages = stages;
  report.seed = seed;

  for (Variant variant : {Variant::Random, Variant::Fixed}) {
    SimulationConfig config = build_task(task, variant);
    config.stages = stages;
    config.seed = seed;  // common random numbers across the two variants
    RunResult run = run_simulation(config);
    StrategyOutcome outcome = summarize(run, variant);
    if (variant == Variant::Random) {
      report.random_outcome = std::move(outcome);
      report.random_run = std::move(run);
    } else {
      report.fixed_outcome = std::move(outcome);
      report.fixed_run = std::move(run);
    }
  }

  report.knowledge_winner = winner(
      static_cast<long long>(report.random_outcome.final_total_knowledge),
      static_cast<long long>(report.fixed_outcome.final_total_knowledge));
  report.reward_winner =
      winner(static_cast<long long>(report.random_outcome.reward_total()),
             static_cast<long long>(report.fixed_outcome.reward_total()));
  return report;
}

MonteCarloSummary monte_carlo(TaskId task, int stages, int runs,
                              std::uint64_t base_seed) {
  if (runs < 1) throw ConfigError("monte carlo needs at least one run");

  MonteCarloSummary summary;
  summary.task = task;
  summary.stages = stages;
  summary.runs = runs;
  summary.base_seed = base_seed;

  for (Variant variant : {Variant::Random, Variant::Fixed}) {
    Accumulator knowledge;
    Accumulator reward;
    for (int i = 0; i < runs; ++i) {
      SimulationConfig config = build_task(task, variant);
      config.stages = stages;
      config.seed = base_seed + static_cast<std::uint64_t>(i);
      RunResult run = run_simulation(config);
      const Snapshot& final_snap = run.series.back();
      knowledge.add(final_snap.total_knowledge);
      int reward_sum = 0;
      for (const auto& [id, r] : final_snap.rewards) reward_sum += r;
      reward.add(reward_sum);
    }
    VariantStats stats;
    stats.variant = variant_name(variant);
    stats.mean_knowledge = knowledge.mean;
    stats.stddev_knowledge = knowledge.stddev();
    stats.mean_reward = reward.mean;
    stats.stddev_reward = reward.stddev();
    stats.min_knowledge = knowledge.min_value;
    stats.max_knowledge = knowledge.max_value;
    stats.min_reward = reward.min_value;
    stats.max_reward = reward.max_value;
    (variant == Variant::Random ? summary.random_stats
                                : summary.fixed_stats) = stats;
  }

  summary.knowledge_winner = winner(summary.random_stats.mean_knowledge,
                                    summary.fixed_stats.mean_knowledge);
  summary.reward_winner = winner(summary.random_stats.mean_reward,
                                 summary.fixed_stats.mean_reward);
  return summary;
}

}  // namespace kgsim
