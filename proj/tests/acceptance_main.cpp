// Acceptance suite. Each criterion prints exactly one [PASS]/[FAIL] line;
// the process exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "kgsim/coopgame.hpp"
#include "kgsim/engine.hpp"
#include "kgsim/experiments.hpp"
#include "kgsim/invariants.hpp"
#include "kgsim/report.hpp"

namespace fs = std::filesystem;
using namespace kgsim;

namespace {

constexpr double kShapleyTol = 1e-9;

struct CriterionResult {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// All task/variant runs shared by criteria 1, 5 and 6.
struct RunBatch {
  std::vector<RunResult> runs;
  double elapsed_seconds = 0.0;
};

const RunBatch& batch() {
  static const RunBatch value = [] {
    RunBatch out;
    const auto start = std::chrono::steady_clock::now();
    for (TaskId task :
         {TaskId::One, TaskId::OneCompareK2, TaskId::Two, TaskId::Three}) {
      for (Variant variant : {Variant::Random, Variant::Fixed}) {
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
          SimulationConfig config = build_task(task, variant);
          config.stages = 10;
          config.seed = seed;
          out.runs.push_back(run_simulation(config));
        }
      }
    }
    out.elapsed_seconds = seconds_since(start);
    return out;
  }();
  return value;
}

bool is_multi_org(const RunResult& run) {
  return run.config.organizations.size() > 1;
}

// --- criterion 1: correctness invariant over the full task grid -------------

CriterionResult criterion_invariant() {
  CriterionResult result;
  for (const RunResult& run : batch().runs) {
    if (run.records.size() != 10) {
      result.fail(run.run_id + ": expected 10 stage records");
    }
    for (const StageRecord& rec : run.records) {
      if (!rec.invariant_held) {
        result.fail(run.run_id + " stage " + std::to_string(rec.stage) +
                    ": invariant violated");
      }
      const int reward_sum = [&] {
        int sum = 0;
        for (const auto& [id, r] : rec.rewards) sum += r;
        return sum;
      }();
      if (rec.total_knowledge != rec.no_tg_knowledge + reward_sum) {
        result.fail(run.run_id + ": recorded totals break the equality");
      }
    }
    const CorrectnessVerdict final_verdict =
        check_correctness_invariant(run.world);
    if (!final_verdict.held || final_verdict.lhs != final_verdict.rhs) {
      result.fail(run.run_id + ": final state equality broken");
    }
  }
  if (batch().elapsed_seconds >= 60.0) {
    result.fail("batch took " + std::to_string(batch().elapsed_seconds) +
                " s (budget 60 s)");
  }
  std::ostringstream note;
  note << batch().runs.size() << " runs in " << batch().elapsed_seconds
       << " s";
  if (result.ok) result.detail = note.str();
  return result;
}

// --- criterion 2: Shapley closed form vs brute-force oracle -----------------

CriterionResult criterion_shapley_oracle() {
  CriterionResult result;
  int comparisons = 0;

  auto check_org = [&](const Organization& org, const WorldState& world,
                       const std::string& where) {
    const ShapleyVector closed = shapley_closed_form(org, world);
    const ShapleyVector brute = shapley_bruteforce(org, world);
    for (const auto& [id, value] : closed.values) {
      if (std::abs(value - brute.values.at(id)) > kShapleyTol) {
        result.fail(where + ": closed form deviates from the oracle");
      }
    }
    const double pool =
        static_cast<double>(org_knowledge(world, org.id).size());
    if (std::abs(closed.sum() - pool) > kShapleyTol) {
      result.fail(where + ": efficiency broken");
    }
    ++comparisons;
  };

  // every stage of 20 seeded task-one runs (5 players)
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SimulationConfig config = build_task(TaskId::One, Variant::Random);
    config.seed = seed;
    WorldState world = init_world(config);
    std::map<OrgId, const FacilitatorSpec*> by_org;
    for (const FacilitatorSpec& spec : config.facilitators) {
      by_org[spec.org] = &spec;
    }
    check_org(world.organizations.at(1), world, "task one baseline");
    for (int stage = 1; stage <= 10; ++stage) {
      run_stage(world, config, by_org);
      check_org(world.organizations.at(1), world,
                "task one seed " + std::to_string(seed) + " stage " +
                    std::to_string(stage));
    }
  }

  // constructed 6-player organizations with random ownership
  Rng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    WorldState world(1);
    Organization org;
    org.id = 1;
    for (InventorId i = 1; i <= 6; ++i) {
      org.members.insert(i);
      Inventor inv;
      inv.id = i;
      inv.org = 1;
      inv.org_history.emplace_back(0, 1);
      world.inventors.emplace(i, std::move(inv));
    }
    const int items = 1 + static_cast<int>(rng.uniform_below(8));
    for (ItemId item = 0; item < items; ++item) {
      world.items.push_back(KnowledgeItem{item, 1});
      bool owned = false;
      while (!owned) {
        for (InventorId i = 1; i <= 6; ++i) {
          if (rng.bernoulli(0.35)) {
            world.inventors.at(i).knowledge.insert(item);
            owned = true;
          }
        }
      }
    }
    world.organizations.emplace(1, std::move(org));
    check_org(world.organizations.at(1), world,
              "constructed 6-player trial " + std::to_string(trial));
  }

  if (result.ok) {
    result.detail = std::to_string(comparisons) + " organizations compared";
  }
  return result;
}

// --- criterion 3: the proof's case analysis as executable checks ------------

CriterionResult criterion_proof_cases() {
  CriterionResult result;

  {  // base case: T = 0 gives 0 = 0 + 0
    SimulationConfig config;
    config.organizations = {{1, {1, 2, 3}, {{1, 2}, {1, 3}, {2, 3}}}};
    config.stages = 0;
    const RunResult run = run_simulation(config);
    const CorrectnessVerdict verdict = check_correctness_invariant(run.world);
    if (!(verdict.held && verdict.lhs == 0 && verdict.rhs == 0)) {
      result.fail("base case is not 0 = 0 + 0");
    }
  }

  {  // subcase (a): creation without a facilitator edge
    SimulationConfig config;
    config.organizations = {{1, {1, 2, 3}, {{1, 2}, {1, 3}, {2, 3}}}};
    config.stages = 1;
    config.seed = 11;
    WorldState world = init_world(config);
    const StageRecord rec = run_stage(world, config, {});
    if (!(rec.item_created && !rec.tg_edge_in_clique &&
          rec.no_tg_knowledge == 1 && world.counters.reward_total() == 0 &&
          rec.total_knowledge == 1)) {
      result.fail("subcase (a) did not increment only noTGKnowledge");
    }
  }

  {  // subcase (b): creation through a facilitator edge
    SimulationConfig config;
    config.organizations = {{1, {1, 2}, {}}};
    FacilitatorSpec tg;
    tg.id = "tg1";
    tg.org = 1;
    tg.budget = 1;
    tg.strategy = StrategyKind::FixedEdges;
    tg.fixed_edges = {{1, 2}};
    config.facilitators = {tg};
    config.clique_min_size = 2;
    config.stages = 1;
    WorldState world = init_world(config);
    std::map<OrgId, const FacilitatorSpec*> by_org{
        {1, &config.facilitators[0]}};
    const StageRecord rec = run_stage(world, config, by_org);
    if (!(rec.item_created && rec.tg_edge_in_clique &&
          rec.rewards.at("tg1") == 1 && rec.no_tg_knowledge == 0)) {
      result.fail("subcase (b) did not increment exactly one r(tg)");
    }
  }

  {  // case 1: no creation freezes counters and knowledge sets
    SimulationConfig config;
    config.organizations = {{1, {1, 2, 3}, {{1, 2}}}};
    config.clique_min_size = 2;
    config.stages = 1;
    config.seed = 4;
    WorldState world = init_world(config);
    world.inventors.at(3).knowledge.insert(0);
    world.items.push_back(KnowledgeItem{0, 1});
    world.counters.no_tg_knowledge = 1;
    const auto knowledge_before = world.inventors.at(1).knowledge;
    const StageRecord rec = run_stage(world, config, {});
    if (!(rec.clique && !rec.item_created && rec.no_tg_knowledge == 1 &&
          rec.total_knowledge == 1 && rec.invariant_held &&
          world.inventors.at(1).knowledge == knowledge_before)) {
      result.fail("no-creation stage did not freeze the counters");
    }
  }

  return result;
}

// --- criterion 4: clique enumeration and uniform selection ------------------

CriterionResult criterion_cliques() {
  CriterionResult result;
  TempEdgeSet no_temp;

  Organization triangle;
  triangle.id = 1;
  triangle.members = {1, 2, 3};
  triangle.permanent_edges = {{1, 2}, {1, 3}, {2, 3}};
  const std::vector<Clique> triangle_cliques =
      enumerate_cliques(triangle, no_temp, 1);
  if (triangle_cliques.size() != 7) {
    result.fail("triangle produced " +
                std::to_string(triangle_cliques.size()) + " cliques, not 7");
  }

  Organization task_one;
  task_one.id = 1;
  task_one.members = {1, 2, 3, 4, 5};
  task_one.permanent_edges = {{1, 2}, {1, 3}, {2, 3}, {3, 4}, {3, 5}, {4, 5}};

  // independent oracle: all 31 non-empty subsets, pairwise connectivity
  int oracle_count = 0;
  const std::vector<InventorId> vertices(task_one.members.begin(),
                                         task_one.members.end());
  for (unsigned mask = 1; mask < 32; ++mask) {
    std::vector<InventorId> subset;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (mask & (1u << i)) subset.push_back(vertices[i]);
    }
    bool clique = true;
    for (std::size_t i = 0; i < subset.size() && clique; ++i) {
      for (std::size_t j = i + 1; j < subset.size(); ++j) {
        if (task_one.permanent_edges.count(
                make_edge(subset[i], subset[j])) == 0) {
          clique = false;
          break;
        }
      }
    }
    if (clique) ++oracle_count;
  }
  const std::vector<Clique> task_one_cliques =
      enumerate_cliques(task_one, no_temp, 1);
  if (oracle_count != 13) {
    result.fail("oracle count over 31 subsets is " +
                std::to_string(oracle_count) + ", expected 13");
  }
  if (static_cast<int>(task_one_cliques.size()) != oracle_count) {
    result.fail("enumeration disagrees with the subset oracle");
  }

  // 7,000 uniform draws over the triangle's 7 cliques: 1,000 +/- 110 each
  Rng rng(2718);
  std::map<std::string, int> counts;
  for (int draw = 0; draw < 7000; ++draw) {
    const Clique& pick = select_clique(triangle_cliques, rng);
    std::string key;
    for (InventorId id : pick.members) key += std::to_string(id);
    counts[key] += 1;
  }
  if (counts.size() != 7) result.fail("some clique was never drawn");
  for (const auto& [key, count] : counts) {
    if (count < 890 || count > 1110) {
      result.fail("clique " + key + " drawn " + std::to_string(count) +
                  " times, outside 1000 +/- 110");
    }
  }
  return result;
}

// --- criterion 5: probability bounds and pinned edge cases ------------------

CriterionResult criterion_probability_bounds() {
  CriterionResult result;
  int empty_pool_creations = 0;
  int empty_pool_leaves = 0;
  for (const RunResult& run : batch().runs) {
    const std::vector<Violation> violations =
        check_probability_bounds(run.records);
    if (!violations.empty()) {
      result.fail(run.run_id + ": " + violations.front().detail);
    }
    for (const StageRecord& rec : run.records) {
      if (rec.creation_pool && *rec.creation_pool == 0 &&
          rec.creation_probability_value) {
        ++empty_pool_creations;
        if (*rec.creation_probability_value != 1.0) {
          result.fail(run.run_id + ": |K_l|=0 creation probability not 1");
        }
      }
      if (rec.leave_pool && *rec.leave_pool == 0 && rec.leave_probability) {
        ++empty_pool_leaves;
        if (*rec.leave_probability != 0.0) {
          result.fail(run.run_id + ": |K_l|=0 leave probability not 0");
        }
      }
    }
  }
  if (empty_pool_creations == 0) {
    result.fail("no |K_l|=0 creation case was exercised");
  }
  if (empty_pool_leaves == 0) {
    result.fail("no |K_l|=0 leave case was exercised");
  }
  if (result.ok) {
    result.detail = std::to_string(empty_pool_creations) + " empty-pool " +
                    "creations, " + std::to_string(empty_pool_leaves) +
                    " empty-pool leave draws";
  }
  return result;
}

// --- criterion 6: structural audits ------------------------------------------

CriterionResult criterion_structural() {
  CriterionResult result;

  // stage-by-stage audits on multi-org runs, including temp-edge hygiene
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SimulationConfig config = build_task(TaskId::Three, Variant::Random);
    config.seed = seed;
    WorldState world = init_world(config);
    std::map<OrgId, const FacilitatorSpec*> by_org;
    for (const FacilitatorSpec& spec : config.facilitators) {
      by_org[spec.org] = &spec;
    }
    OriginRegistry origins;
    for (int stage = 1; stage <= 10; ++stage) {
      run_stage(world, config, by_org);
      if (!world.temp_edges.edges.empty()) {
        result.fail("temporary edges survived a stage");
      }
      if (!check_structural_invariants(world).empty()) {
        result.fail("structural audit failed mid-run");
      }
      if (!origins.observe(world).empty()) {
        result.fail("an item origin was rewritten");
      }
    }
  }

  // movement and reward accounting across the shared batch
  for (const RunResult& run : batch().runs) {
    int movement_records = 0;
    for (const StageRecord& rec : run.records) {
      if (rec.movement) {
        ++movement_records;
        if (rec.movement->stage != rec.stage) {
          result.fail(run.run_id + ": movement recorded on the wrong stage");
        }
      }
      const bool rewarded = rec.reward_to.has_value();
      if (rewarded != (rec.item_created && rec.tg_edge_in_clique)) {
        result.fail(run.run_id + ": reward_to out of sync with creation");
      }
    }
    if (!is_multi_org(run) && movement_records != 0) {
      result.fail(run.run_id + ": movement in a single-organization run");
    }
    if (static_cast<std::size_t>(movement_records) != run.movements.size()) {
      result.fail(run.run_id + ": movement ledger out of sync");
    }
  }
  return result;
}

// --- criterion 7: byte-identical artifacts from the real CLI ----------------

CriterionResult criterion_determinism() {
  CriterionResult result;
#ifndef KGSIM_CLI_PATH
  result.fail("KGSIM_CLI_PATH not defined");
  return result;
#else
  const fs::path scratch = fs::temp_directory_path() / "kgsim_acceptance";
  std::error_code ec;
  fs::remove_all(scratch, ec);
  fs::create_directories(scratch / "a");
  fs::create_directories(scratch / "b");

  for (const char* sub : {"a", "b"}) {
    std::ostringstream cmd;
    cmd << '"' << KGSIM_CLI_PATH << '"'
        << " run --task two --variant random --stages 10 --seed 7 --out "
        << (scratch / sub) << " > " << (scratch / sub / "stdout.txt");
    if (std::system(cmd.str().c_str()) != 0) {
      result.fail("CLI run exited nonzero");
      return result;
    }
  }

  const std::vector<std::string> artifacts = {
      "two-random-s7/stage_log.jsonl",    "two-random-s7/series/reward.csv",
      "two-random-s7/series/knowledge.csv", "two-random-s7/series/shapley.csv",
      "two-random-s7/series/totals.csv",  "two-random-s7/plots/reward.svg",
      "two-random-s7/plots/knowledge.svg", "two-random-s7/plots/shapley.svg",
      "two-random-s7/plots/knowledge_split.svg", "two-random-s7/report.txt"};
  for (const std::string& rel : artifacts) {
    const std::string first = slurp(scratch / "a" / rel);
    const std::string second = slurp(scratch / "b" / rel);
    if (first.empty()) result.fail(rel + " missing or empty");
    if (first != second) result.fail(rel + " differs between identical runs");
  }
  const std::string log = slurp(scratch / "a" / "two-random-s7/stage_log.jsonl");
  const long lines = std::count(log.begin(), log.end(), '\n');
  if (lines != 10) result.fail("stage log does not have 10 lines");
  fs::remove_all(scratch, ec);
  if (result.ok) result.detail = "10 artifacts byte-identical";
  return result;
#endif
}

// --- criterion 8: conclusions contract and Monte Carlo budget ----------------

CriterionResult criterion_conclusions() {
  CriterionResult result;
  for (TaskId task :
       {TaskId::One, TaskId::OneCompareK2, TaskId::Two, TaskId::Three}) {
    const ComparisonReport report = compare_strategies(task, 10, 42);
    const std::string text = comparison_text(report);
    if (text.find("created more knowledge") == std::string::npos ||
        text.find("gave the tg more reward") == std::string::npos) {
      result.fail(std::string("comparison text for task ") + task_name(task) +
                  " is missing a verdict line");
    }
    for (const StrategyOutcome* outcome :
         {&report.random_outcome, &report.fixed_outcome}) {
      if (outcome->no_tg_knowledge + outcome->tg_knowledge !=
          outcome->final_total_knowledge) {
        result.fail(std::string("split breaks the equality for task ") +
                    task_name(task));
      }
    }

    const auto start = std::chrono::steady_clock::now();
    const MonteCarloSummary summary = monte_carlo(task, 10, 100, 42);
    const double elapsed = seconds_since(start);
    if (elapsed >= 30.0) {
      result.fail(std::string("montecarlo for task ") + task_name(task) +
                  " took " + std::to_string(elapsed) + " s (budget 30 s)");
    }
    const std::string mc_text = monte_carlo_text(summary);
    if (mc_text.find("created more knowledge") == std::string::npos ||
        mc_text.find("gave the tg more reward") == std::string::npos) {
      result.fail(std::string("monte carlo text for task ") +
                  task_name(task) + " is missing a verdict line");
    }
  }
  return result;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<CriterionResult()> check;
  };
  const std::vector<Criterion> criteria = {
      {"correctness invariant (4 tasks x 2 variants x 100 seeds x 10 stages)",
       criterion_invariant},
      {"shapley closed form matches brute-force oracle within 1e-9",
       criterion_shapley_oracle},
      {"inductive proof cases (base, subcase a, subcase b, no-creation)",
       criterion_proof_cases},
      {"clique machinery (7 on triangle, 13 on task one, uniform draws)",
       criterion_cliques},
      {"probability bounds with pinned |K_l|=0 edge cases",
       criterion_probability_bounds},
      {"structural audits (temp hygiene, disjointness, origin, movement)",
       criterion_structural},
      {"determinism: identical CLI runs yield byte-identical artifacts",
       criterion_determinism},
      {"conclusions contract and Monte Carlo time budget",
       criterion_conclusions},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    CriterionResult result;
    try {
      result = criterion.check();
    } catch (const std::exception& err) {
      result.fail(std::string("exception: ") + err.what());
    }
    std::cout << (result.ok ? "[PASS] " : "[FAIL] ") << criterion.name;
    if (!result.detail.empty()) std::cout << " — " << result.detail;
    std::cout << "\n";
    if (!result.ok) ++failures;
  }
  std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed"
                              : "ACCEPTANCE: FAILURES PRESENT")
            << "\n";
  return failures == 0 ? 0 : 1;
}
