#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "kgsim/core.hpp"

namespace kgsim {

// Complete subgraph under permanent plus temporary edges. Members sorted
// ascending; singletons are valid cliques.
struct Clique {
  std::vector<InventorId> members;
};

enum class StrategyKind {
  RandomUnconnectedPairs,  // uniform sample of currently unconnected pairs
  FixedEdges,              // always the configured pairs, infeasible ones skipped
};

struct FacilitatorSpec {
  std::string id;
  OrgId org = 0;
  int budget = 0;  // k_l, max temporary edges per stage
  StrategyKind strategy = StrategyKind::RandomUnconnectedPairs;
  std::vector<Edge> fixed_edges;  // only for FixedEdges
};

struct OrgConfig {
  OrgId id = 0;
  std::vector<InventorId> members;
  std::vector<Edge> edges;
};

struct SimulationConfig {
  std::string label = "run";
  std::vector<OrgConfig> organizations;
  std::vector<FacilitatorSpec> facilitators;
  int stages = 10;
  double leave_gate_p = 0.2;  // chance the leaving step runs at all (m > 1)
  int clique_min_size = 1;
  int clique_member_cap = 20;       // enumeration guard
  bool maximal_cliques_only = false;
  std::uint64_t seed = 42;

  // Test hook: adds 1 to no_tg_knowledge right before the invariant check of
  // the given stage, so the failure path (log flush + exit 2) is exercisable.
  std::optional<int> corrupt_counters_at_stage;
};

// One stage's audit record. The JSONL stage log serializes the contract
// fields; the probability diagnostics feed the bounds review only.
struct StageRecord {
  int stage = 0;
  OrgId org = 0;
  std::optional<MovementEvent> movement;
  std::vector<Edge> temp_edges;
  std::optional<Clique> clique;
  bool tg_edge_in_clique = false;
  bool item_created = false;
  std::optional<ItemId> item_id;
  std::optional<std::string> reward_to;
  int total_knowledge = 0;
  int no_tg_knowledge = 0;
  std::map<std::string, int> rewards;
  bool invariant_held = false;

  // diagnostics, not part of the stage-log schema
  std::optional<double> leave_probability;
  std::optional<int> leave_pool;  // |K_l| when the leave probability was computed
  std::optional<double> creation_probability_value;
  std::optional<int> creation_pool;  // |K_l| when the creation draw happened
  std::vector<Edge> skipped_fixed_edges;
};

// Post-stage snapshot feeding the time series. Index 0 is the baseline taken
// right after initialization.
struct Snapshot {
  int stage = 0;
  int total_knowledge = 0;
  int no_tg_knowledge = 0;
  std::map<std::string, int> rewards;
  std::map<InventorId, int> knowledge_size;
  std::map<InventorId, OrgId> inventor_org;
  std::map<InventorId, double> shapley;
};

struct RunResult {
  std::string run_id;
  SimulationConfig config;
  std::vector<StageRecord> records;   // one per executed stage
  std::vector<Snapshot> series;       // stages + 1 entries, [0] = baseline
  std::vector<MovementEvent> movements;
  WorldState world;                   // final state

  RunResult() : world(0) {}
};

// Raised when the correctness invariant (or a structural audit) fails after
// a stage. Carries everything recorded so far so callers can flush the log
// before aborting.
class InvariantViolation : public std::runtime_error {
 public:
  InvariantViolation(const std::string& what, RunResult partial)
      : std::runtime_error(what), result(std::move(partial)) {}

  RunResult result;
};

// Builds the world from a validated config. Throws ConfigError on overlap,
// unknown edge endpoints, self-loops, or out-of-range parameters.
WorldState init_world(const SimulationConfig& config);

// Stage step 1: uniform pick over the sorted org ids; consumes one uniform
// draw. Throws ConfigError when no organizations exist.
OrgId select_organization(WorldState& world);

struct LeavingOutcome {
  std::optional<MovementEvent> movement;
  std::optional<double> probability;  // P_leave, when it was computed
  std::optional<int> pool;            // |K_l| behind that probability
};

// Stage step 2. Skipped entirely (no draws) when m == 1 or the organization
// is empty. Otherwise the draw order is: gate, tie-break (only when several
// inventors tie for maximal |B_i|), leave, destination (only on a leave).
LeavingOutcome leaving_step(WorldState& world, OrgId org, double gate_p,
                            int stage);

struct FacilitatorResult {
  TempEdgeSet temp;
  std::vector<Edge> skipped;  // fixed pairs that could not materialize
};

// Stage step 3. RandomUnconnectedPairs samples min(budget, available)
// distinct unconnected member pairs without replacement; FixedEdges
// materializes each feasible configured pair and skips the rest.
FacilitatorResult apply_facilitator(WorldState& world,
                                    const FacilitatorSpec& spec);

// Every complete subgraph of size >= min_size under permanent plus temporary
// edges, in lexicographic member order. Throws ConfigError when the member
// count exceeds `member_cap` (the enumeration is exponential). With
// `maximal_only`, keeps only cliques no vertex can extend.
std::vector<Clique> enumerate_cliques(const Organization& org,
                                      const TempEdgeSet& temp, int min_size,
                                      int member_cap = 20,
                                      bool maximal_only = false);

// Uniform pick over an enumerated clique list; one uniform draw.
const Clique& select_clique(const std::vector<Clique>& cliques, Rng& rng);

// |union_{i in C} B_i| / |K_l|, defined as 1 when |K_l| == 0.
double creation_probability(const Clique& clique, const WorldState& world,
                            OrgId org);

// Executes one full stage in the canonical draw order and returns its
// record. The caller owns escalation of invariant_held == false.
StageRecord run_stage(WorldState& world, const SimulationConfig& config,
                      const std::map<OrgId, const FacilitatorSpec*>&
                          facilitators_by_org);

// Runs the whole simulation: baseline snapshot, config.stages stages, per
// stage series, structural audits after every stage. Bit-identical output
// for identical config + seed. Throws InvariantViolation (carrying the
// partial result) when any check fails.
RunResult run_simulation(const SimulationConfig& config);

}  // namespace kgsim
