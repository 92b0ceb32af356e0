#include "kgsim/engine.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <vector>

#include "kgsim/coopgame.hpp"
#include "kgsim/invariants.hpp"

namespace kgsim {

namespace {

std::vector<OrgId> sorted_org_ids(const WorldState& world) {
  std::vector<OrgId> ids;
  ids.reserve(world.organizations.size());
  for (const auto& [id, org] : world.organizations) ids.push_back(id);
  return ids;  // std::map iteration is already sorted
}

bool members_connected(const Organization& org, const TempEdgeSet& temp,
                       InventorId a, InventorId b) {
  const Edge e = make_edge(a, b);
  return org.permanent_edges.count(e) > 0 || temp.contains(e);
}

// DFS in ascending vertex order yields the lexicographic clique list.
void extend_cliques(const std::vector<InventorId>& vertices,
                    const Organization& org, const TempEdgeSet& temp,
                    std::vector<InventorId>& current, std::size_t start,
                    int min_size, std::vector<Clique>& out) {
  for (std::size_t i = start; i < vertices.size(); ++i) {
    const InventorId candidate = vertices[i];
    bool connected_to_all = true;
    for (InventorId member : current) {
      if (!members_connected(org, temp, member, candidate)) {
        connected_to_all = false;
        break;
      }
    }
    if (!connected_to_all) continue;
    current.push_back(candidate);
    if (static_cast<int>(current.size()) >= min_size) {
      out.push_back(Clique{current});
    }
    extend_cliques(vertices, org, temp, current, i + 1, min_size, out);
    current.pop_back();
  }
}

Snapshot take_snapshot(const WorldState& world) {
  Snapshot snap;
  snap.stage = world.stage_index;
  snap.no_tg_knowledge = world.counters.no_tg_knowledge;
  snap.rewards = world.counters.rewards;
  snap.total_knowledge =
      static_cast<int>(check_correctness_invariant(world).lhs);
  for (const auto& [id, inventor] : world.inventors) {
    snap.knowledge_size[id] = static_cast<int>(inventor.knowledge.size());
    snap.inventor_org[id] = inventor.org;
  }
  for (const auto& [org_id, org] : world.organizations) {
    ShapleyVector phi = shapley_closed_form(org, world);
    for (const auto& [id, value] : phi.values) snap.shapley[id] = value;
  }
  return snap;
}

std::string describe(const std::vector<Violation>& violations) {
  std::ostringstream out;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i > 0) out << "; ";
    out << violations[i].code << ": " << violations[i].detail;
  }
  return out.str();
}

}  // namespace

WorldState init_world(const SimulationConfig& config) {
  if (config.organizations.empty()) {
    throw ConfigError("configuration declares no organizations");
  }
  if (config.stages < 0) throw ConfigError("stages must be >= 0");
  if (config.leave_gate_p < 0.0 || config.leave_gate_p > 1.0) {
    throw ConfigError("leave probability gate must lie in [0,1]");
  }
  if (config.clique_min_size < 1) throw ConfigError("clique_min_size must be >= 1");
  if (config.clique_member_cap < 1) throw ConfigError("clique_member_cap must be >= 1");

  WorldState world(config.seed);
  for (const OrgConfig& oc : config.organizations) {
    if (world.organizations.count(oc.id) > 0) {
      throw ConfigError("duplicate organization id " + std::to_string(oc.id));
    }
    Organization org;
    org.id = oc.id;
    for (InventorId member : oc.members) {
      if (member < 0) throw ConfigError("inventor ids must be non-negative");
      if (world.inventors.count(member) > 0) {
        throw ConfigError("inventor " + std::to_string(member) +
                          " declared in more than one organization");
      }
      org.members.insert(member);
      Inventor inv;
      inv.id = member;
      inv.org = oc.id;
      inv.org_history.emplace_back(0, oc.id);
      world.inventors.emplace(member, std::move(inv));
    }
    for (const Edge& raw : oc.edges) {
      const Edge e = make_edge(raw.first, raw.second);
      if (org.members.count(e.first) == 0 || org.members.count(e.second) == 0) {
        throw ConfigError("edge (" + std::to_string(e.first) + "," +
                          std::to_string(e.second) +
                          ") references a non-member of organization " +
                          std::to_string(oc.id));
      }
      org.permanent_edges.insert(e);
    }
    world.organizations.emplace(oc.id, std::move(org));
  }

  std::set<OrgId> with_facilitator;
  for (const FacilitatorSpec& spec : config.facilitators) {
    if (spec.id.empty()) throw ConfigError("facilitator with empty id");
    if (world.organizations.count(spec.org) == 0) {
      throw ConfigError("facilitator " + spec.id +
                        " attached to unknown organization " +
                        std::to_string(spec.org));
    }
    if (!with_facilitator.insert(spec.org).second) {
      throw ConfigError("organization " + std::to_string(spec.org) +
                        " has more than one facilitator");
    }
    if (spec.budget < 0) {
      throw ConfigError("facilitator " + spec.id + " has negative budget");
    }
    if (world.counters.rewards.count(spec.id) > 0) {
      throw ConfigError("duplicate facilitator id " + spec.id);
    }
    world.counters.rewards[spec.id] = 0;
  }
  return world;
}

OrgId select_organization(WorldState& world) {
  if (world.organizations.empty()) {
    throw ConfigError("cannot select an organization from an empty world");
  }
  const std::vector<OrgId> ids = sorted_org_ids(world);
  return ids[world.rng.uniform_below(ids.size())];
}

LeavingOutcome leaving_step(WorldState& world, OrgId org_id, double gate_p,
                            int stage) {
  LeavingOutcome outcome;
  if (world.org_count() <= 1) return outcome;  // no draws when m == 1
  const Organization& org = world.organizations.at(org_id);
  if (org.members.empty()) return outcome;

  if (!world.rng.bernoulli(gate_p)) return outcome;  // gate draw

  // M_l: members with maximal |B_i| (ascending id order for determinism).
  std::size_t best = 0;
  for (InventorId member : org.members) {
    best = std::max(best, world.inventors.at(member).knowledge.size());
  }
  std::vector<InventorId> maximal;
  for (InventorId member : org.members) {
    if (world.inventors.at(member).knowledge.size() == best) {
      maximal.push_back(member);
    }
  }
  InventorId candidate = maximal.front();
  if (maximal.size() > 1) {  // tie-break draw
    candidate = maximal[world.rng.uniform_below(maximal.size())];
  }

  const int pool = static_cast<int>(org_knowledge(world, org_id).size());
  const double p_leave =
      pool > 0 ? static_cast<double>(
                     world.inventors.at(candidate).knowledge.size()) /
                     static_cast<double>(pool)
               : 0.0;
  outcome.probability = p_leave;
  outcome.pool = pool;

  if (!world.rng.bernoulli(p_leave)) return outcome;  // leave draw

  std::vector<OrgId> destinations;
  for (OrgId id : sorted_org_ids(world)) {
    if (id != org_id) destinations.push_back(id);
  }
  const OrgId target =
      destinations[world.rng.uniform_below(destinations.size())];
  outcome.movement = move_inventor(world, candidate, org_id, target, stage);
  return outcome;
}

FacilitatorResult apply_facilitator(WorldState& world,
                                    const FacilitatorSpec& spec) {
  FacilitatorResult result;
  result.temp.owner = spec.id;
  const Organization& org = world.organizations.at(spec.org);

  if (spec.strategy == StrategyKind::FixedEdges) {
    for (const Edge& raw : spec.fixed_edges) {
      if (static_cast<int>(result.temp.edges.size()) >= spec.budget) {
        result.skipped.push_back(raw);
        continue;
      }
      if (raw.first == raw.second) {
        result.skipped.push_back(raw);
        continue;
      }
      const Edge e = make_edge(raw.first, raw.second);
      if (org.members.count(e.first) == 0 || org.members.count(e.second) == 0 ||
          org.permanent_edges.count(e) > 0 || result.temp.contains(e)) {
        result.skipped.push_back(e);
        continue;
      }
      result.temp.edges.insert(e);
    }
    return result;
  }

  // RandomUnconnectedPairs: uniform sample without replacement from the
  // lexicographically sorted list of currently unconnected member pairs.
  std::vector<InventorId> members(org.members.begin(), org.members.end());
  std::vector<Edge> candidates;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const Edge e = make_edge(members[i], members[j]);
      if (org.permanent_edges.count(e) == 0) candidates.push_back(e);
    }
  }
  const std::size_t take =
      std::min<std::size_t>(spec.budget, candidates.size());
  for (std::size_t i = 0; i < take; ++i) {  // partial Fisher-Yates
    const std::size_t pick =
        i + world.rng.uniform_below(candidates.size() - i);
    std::swap(candidates[i], candidates[pick]);
    result.temp.edges.insert(candidates[i]);
  }
  return result;
}

std::vector<Clique> enumerate_cliques(const Organization& org,
                                      const TempEdgeSet& temp, int min_size,
                                      int member_cap, bool maximal_only) {
  if (min_size < 1) throw ConfigError("clique min_size must be >= 1");
  if (static_cast<int>(org.members.size()) > member_cap) {
    throw ConfigError(
        "organization " + std::to_string(org.id) + " has " +
        std::to_string(org.members.size()) +
        " members; clique enumeration is exponential and capped at " +
        std::to_string(member_cap));
  }
  std::vector<InventorId> vertices(org.members.begin(), org.members.end());
  std::vector<Clique> cliques;
  std::vector<InventorId> current;
  extend_cliques(vertices, org, temp, current, 0, min_size, cliques);

  if (maximal_only) {
    std::erase_if(cliques, [&](const Clique& c) {
      for (InventorId v : vertices) {
        if (std::binary_search(c.members.begin(), c.members.end(), v)) continue;
        bool extends = true;
        for (InventorId member : c.members) {
          if (!members_connected(org, temp, member, v)) {
            extends = false;
            break;
          }
        }
        if (extends) return true;  // not maximal
      }
      return false;
    });
  }
  return cliques;
}

const Clique& select_clique(const std::vector<Clique>& cliques, Rng& rng) {
  if (cliques.empty()) {
    throw std::logic_error("select_clique: empty clique list");
  }
  return cliques[rng.uniform_below(cliques.size())];
}

double creation_probability(const Clique& clique, const WorldState& world,
                            OrgId org) {
  const std::set<ItemId> pool = org_knowledge(world, org);
  if (pool.empty()) return 1.0;
  std::set<ItemId> covered;
  for (InventorId member : clique.members) {
    const auto& b = world.inventors.at(member).knowledge;
    covered.insert(b.begin(), b.end());
  }
  return static_cast<double>(covered.size()) /
         static_cast<double>(pool.size());
}

StageRecord run_stage(WorldState& world, const SimulationConfig& config,
                      const std::map<OrgId, const FacilitatorSpec*>&
                          facilitators_by_org) {
  StageRecord rec;
  const int stage = world.stage_index + 1;
  rec.stage = stage;

  // 1. organization selection
  rec.org = select_organization(world);

  // 2. leaving step
  LeavingOutcome left =
      leaving_step(world, rec.org, config.leave_gate_p, stage);
  rec.movement = left.movement;
  rec.leave_probability = left.probability;
  rec.leave_pool = left.pool;

  // 3. facilitator temporary edges
  const FacilitatorSpec* tg = nullptr;
  if (auto it = facilitators_by_org.find(rec.org);
      it != facilitators_by_org.end()) {
    tg = it->second;
  }
  if (tg != nullptr) {
    FacilitatorResult fac = apply_facilitator(world, *tg);
    world.temp_edges = fac.temp;
    rec.temp_edges.assign(fac.temp.edges.begin(), fac.temp.edges.end());
    rec.skipped_fixed_edges = std::move(fac.skipped);
  }

  // 4. clique selection and knowledge creation
  const Organization& org = world.organizations.at(rec.org);
  const std::vector<Clique> cliques =
      enumerate_cliques(org, world.temp_edges, config.clique_min_size,
                        config.clique_member_cap, config.maximal_cliques_only);
  if (!cliques.empty()) {
    const Clique& chosen = select_clique(cliques, world.rng);
    rec.clique = chosen;
    for (std::size_t i = 0; i < chosen.members.size() && !rec.tg_edge_in_clique;
         ++i) {
      for (std::size_t j = i + 1; j < chosen.members.size(); ++j) {
        if (world.temp_edges.contains(
                make_edge(chosen.members[i], chosen.members[j]))) {
          rec.tg_edge_in_clique = true;
          break;
        }
      }
    }

    rec.creation_pool = static_cast<int>(org_knowledge(world, rec.org).size());
    const double p_new = creation_probability(chosen, world, rec.org);
    rec.creation_probability_value = p_new;
    if (world.rng.bernoulli(p_new)) {
      const ItemId item = static_cast<ItemId>(world.items.size());
      world.items.push_back(KnowledgeItem{item, rec.org});
      for (InventorId member : chosen.members) {
        world.inventors.at(member).knowledge.insert(item);
      }
      rec.item_created = true;
      rec.item_id = item;

      // 5. facilitator reward; counted only for created items so each item
      // lands in exactly one invariant bucket.
      std::optional<std::string> rewarded;
      if (rec.tg_edge_in_clique && tg != nullptr) rewarded = tg->id;
      world.counters =
          record_creation(world.counters, rec.tg_edge_in_clique, rewarded);
      rec.reward_to = rewarded;
    }
  }

  // temporary edges end with the stage
  world.temp_edges.clear();

  world.stage_index = stage;

  if (config.corrupt_counters_at_stage &&
      *config.corrupt_counters_at_stage == stage) {
    world.counters.no_tg_knowledge += 1;  // test hook
  }

  const CorrectnessVerdict verdict = check_correctness_invariant(world);
  rec.invariant_held = verdict.held;
  rec.total_knowledge = static_cast<int>(verdict.lhs);
  rec.no_tg_knowledge = world.counters.no_tg_knowledge;
  rec.rewards = world.counters.rewards;
  return rec;
}

RunResult run_simulation(const SimulationConfig& config) {
  RunResult result;
  result.config = config;
  result.run_id = config.label + "-s" + std::to_string(config.seed);
  result.world = init_world(config);

  std::map<OrgId, const FacilitatorSpec*> facilitators_by_org;
  for (const FacilitatorSpec& spec : result.config.facilitators) {
    facilitators_by_org[spec.org] = &spec;
  }

  OriginRegistry origins;
  auto audit = [&](const char* when) {
    std::vector<Violation> violations =
        check_structural_invariants(result.world);
    std::vector<Violation> origin_violations = origins.observe(result.world);
    violations.insert(violations.end(), origin_violations.begin(),
                      origin_violations.end());
    if (!violations.empty()) {
      throw InvariantViolation(std::string("structural audit failed (") +
                                   when + "): " + describe(violations),
                               std::move(result));
    }
  };

  audit("baseline");
  result.series.push_back(take_snapshot(result.world));

  for (int stage = 1; stage <= config.stages; ++stage) {
    StageRecord rec =
        run_stage(result.world, result.config, facilitators_by_org);
    if (rec.movement) result.movements.push_back(*rec.movement);
    const bool held = rec.invariant_held;
    const int lhs = rec.total_knowledge;
    const int no_tg = rec.no_tg_knowledge;
    result.records.push_back(std::move(rec));
    result.series.push_back(take_snapshot(result.world));
    if (!held) {
      std::ostringstream what;
      what << "correctness invariant failed after stage " << stage << ": |U B_v| = "
           << lhs << " but noTGKnowledge + sum r(tg) = "
           << no_tg + result.world.counters.reward_total();
      throw InvariantViolation(what.str(), std::move(result));
    }
    audit("post-stage");
  }
  return result;
}

}  // namespace kgsim
