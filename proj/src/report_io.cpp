#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "kgsim/report.hpp"

namespace kgsim {

namespace {

// Insertion-ordered JSON keeps the stage-log key order fixed.
using Json = nlohmann::ordered_json;

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

Json edges_json(const std::vector<Edge>& edges) {
  Json arr = Json::array();
  for (const Edge& e : edges) arr.push_back(Json::array({e.first, e.second}));
  return arr;
}

}  // namespace

RunArtifacts plan_artifacts(const std::filesystem::path& out_dir,
                            const std::string& run_id) {
  RunArtifacts art;
  art.root = out_dir / run_id;
  art.stage_log = art.root / "stage_log.jsonl";
  art.series_dir = art.root / "series";
  art.plots_dir = art.root / "plots";
  art.report = art.root / "report.txt";
  return art;
}

std::string stage_log_text(const RunResult& run) {
  std::ostringstream out;
  for (const StageRecord& rec : run.records) {
    Json line;
    line["run_id"] = run.run_id;
    line["stage"] = rec.stage;
    line["org"] = rec.org;
    if (rec.clique) {
      line["clique"] = rec.clique->members;
    } else {
      line["clique"] = nullptr;
    }
    line["temp_edges"] = edges_json(rec.temp_edges);
    line["tg_edge_in_clique"] = rec.tg_edge_in_clique;
    line["item_created"] = rec.item_created;
    if (rec.item_id) {
      line["item_id"] = *rec.item_id;
    } else {
      line["item_id"] = nullptr;
    }
    if (rec.movement) {
      line["movement"] = Json{{"inventor", rec.movement->inventor},
                              {"from", rec.movement->from},
                              {"to", rec.movement->to}};
    } else {
      line["movement"] = nullptr;
    }
    if (rec.reward_to) {
      line["reward_to"] = *rec.reward_to;
    } else {
      line["reward_to"] = nullptr;
    }
    line["total_knowledge"] = rec.total_knowledge;
    line["noTGKnowledge"] = rec.no_tg_knowledge;
    line["rewards"] = Json::object();
    for (const auto& [id, r] : rec.rewards) line["rewards"][id] = r;
    line["invariant_held"] = rec.invariant_held;
    out << line.dump() << "\n";
  }
  return out.str();
}

void write_stage_log(const RunResult& run,
                     const std::filesystem::path& path) {
  write_text_file(path, stage_log_text(run));
}

SeriesCsvText series_csv_text(const RunResult& run) {
  SeriesCsvText csv;

  std::vector<std::string> tg_ids;
  for (const auto& [id, r] : run.series.front().rewards) tg_ids.push_back(id);
  std::vector<InventorId> inventors;
  for (const auto& [id, n] : run.series.front().knowledge_size) {
    inventors.push_back(id);
  }

  {
    std::ostringstream out;
    out << "stage";
    for (const auto& id : tg_ids) out << "," << id;
    out << "\n";
    for (const Snapshot& snap : run.series) {
      out << snap.stage;
      for (const auto& id : tg_ids) out << "," << snap.rewards.at(id);
      out << "\n";
    }
    csv.reward = out.str();
  }
  {
    std::ostringstream out;
    out << "stage";
    for (InventorId id : inventors) {
      out << "," << inventor_label(id) << "," << inventor_label(id) << "_org";
    }
    out << "\n";
    for (const Snapshot& snap : run.series) {
      out << snap.stage;
      for (InventorId id : inventors) {
        out << "," << snap.knowledge_size.at(id) << ","
            << snap.inventor_org.at(id);
      }
      out << "\n";
    }
    csv.knowledge = out.str();
  }
  {
    std::ostringstream out;
    out << "stage";
    for (InventorId id : inventors) out << "," << inventor_label(id);
    out << "\n";
    for (const Snapshot& snap : run.series) {
      out << snap.stage;
      for (InventorId id : inventors) {
        out << "," << format_double(snap.shapley.at(id));
      }
      out << "\n";
    }
    csv.shapley = out.str();
  }
  {
    std::ostringstream out;
    out << "stage,total_knowledge,noTGKnowledge,tg_reward_total\n";
    for (const Snapshot& snap : run.series) {
      int reward_sum = 0;
      for (const auto& [id, r] : snap.rewards) reward_sum += r;
      out << snap.stage << "," << snap.total_knowledge << ","
          << snap.no_tg_knowledge << "," << reward_sum << "\n";
    }
    csv.totals = out.str();
  }
  return csv;
}

void write_series_csv(const RunResult& run,
                      const std::filesystem::path& dir) {
  const SeriesCsvText csv = series_csv_text(run);
  write_text_file(dir / "reward.csv", csv.reward);
  write_text_file(dir / "knowledge.csv", csv.knowledge);
  write_text_file(dir / "shapley.csv", csv.shapley);
  write_text_file(dir / "totals.csv", csv.totals);
}

RunArtifacts write_run_artifacts(const RunResult& run,
                                 const std::filesystem::path& out_dir) {
  const RunArtifacts art = plan_artifacts(out_dir, run.run_id);
  std::error_code ec;
  std::filesystem::create_directories(art.series_dir, ec);
  if (!ec) std::filesystem::create_directories(art.plots_dir, ec);
  if (ec) {
    throw IoError("cannot create output directories under " +
                  art.root.string() + ": " + ec.message());
  }

  write_stage_log(run, art.stage_log);
  write_series_csv(run, art.series_dir);

  const std::string head = "task " + run.config.label + ", seed " +
                           std::to_string(run.config.seed);
  const std::vector<OrgId> org_ids = [&] {
    std::vector<OrgId> ids;
    for (const auto& [id, org] : run.world.organizations) ids.push_back(id);
    return ids;
  }();
  auto org_ordinal = [&org_ids](OrgId id) {
    for (std::size_t i = 0; i < org_ids.size(); ++i) {
      if (org_ids[i] == id) return static_cast<int>(i);
    }
    return 0;
  };

  LineChart reward_chart;
  reward_chart.title = "Cumulative facilitator reward — " + head;
  reward_chart.y_label = "reward";
  for (const auto& [id, r] : run.series.front().rewards) {
    ChartSeries series;
    series.label = id;
    for (const Snapshot& snap : run.series) {
      series.values.push_back(snap.rewards.at(id));
      series.color_group.push_back(0);
    }
    reward_chart.series.push_back(std::move(series));
  }
  write_text_file(art.plots_dir / "reward.svg",
                  render_line_chart(reward_chart));

  LineChart knowledge_chart;
  knowledge_chart.title = "Knowledge per inventor — " + head;
  knowledge_chart.y_label = "|B_i|";
  LineChart shapley_chart;
  shapley_chart.title = "Shapley value per inventor — " + head;
  shapley_chart.y_label = "phi";
  for (const auto& [id, n] : run.series.front().knowledge_size) {
    ChartSeries knowledge_series;
    ChartSeries shapley_series;
    knowledge_series.label = inventor_label(id);
    shapley_series.label = inventor_label(id);
    for (const Snapshot& snap : run.series) {
      const int group = org_ordinal(snap.inventor_org.at(id));
      knowledge_series.values.push_back(snap.knowledge_size.at(id));
      knowledge_series.color_group.push_back(group);
      shapley_series.values.push_back(snap.shapley.at(id));
      shapley_series.color_group.push_back(group);
    }
    knowledge_chart.series.push_back(std::move(knowledge_series));
    shapley_chart.series.push_back(std::move(shapley_series));
  }
  write_text_file(art.plots_dir / "knowledge.svg",
                  render_line_chart(knowledge_chart));
  write_text_file(art.plots_dir / "shapley.svg",
                  render_line_chart(shapley_chart));

  const Snapshot& final_snap = run.series.back();
  write_text_file(
      art.plots_dir / "knowledge_split.svg",
      render_split_bar("Knowledge split — " + head, final_snap.total_knowledge,
                       final_snap.no_tg_knowledge, final_snap.rewards));

  write_text_file(art.report, run_report_text(run));
  return art;
}

SimulationConfig load_config_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& err) {
    throw ConfigError("config " + path.string() + ": " + err.what());
  }

  try {
    SimulationConfig config;
    config.label = doc.value("label", std::string("custom"));
    config.stages = doc.value("stages", 10);
    config.seed = doc.value("seed", std::uint64_t{42});
    config.leave_gate_p = doc.value("leave_p", 0.2);
    config.clique_min_size = doc.value("clique_min_size", 1);
    config.maximal_cliques_only = doc.value("maximal_cliques_only", false);
    config.clique_member_cap = doc.value("clique_member_cap", 20);

    if (!doc.contains("organizations") || !doc["organizations"].is_array()) {
      throw ConfigError("config requires an organizations array");
    }
    for (const Json& node : doc["organizations"]) {
      OrgConfig org;
      org.id = node.at("id").get<int>();
      for (const Json& member : node.at("members")) {
        org.members.push_back(member.get<int>());
      }
      if (node.contains("edges")) {
        for (const Json& edge : node["edges"]) {
          org.edges.emplace_back(edge.at(0).get<int>(), edge.at(1).get<int>());
        }
      }
      config.organizations.push_back(std::move(org));
    }
    if (doc.contains("facilitators")) {
      for (const Json& node : doc["facilitators"]) {
        FacilitatorSpec spec;
        spec.id = node.at("id").get<std::string>();
        spec.org = node.at("org").get<int>();
        spec.budget = node.at("budget").get<int>();
        const std::string strategy = node.value("strategy", "random");
        if (strategy == "random") {
          spec.strategy = StrategyKind::RandomUnconnectedPairs;
        } else if (strategy == "fixed") {
          spec.strategy = StrategyKind::FixedEdges;
          for (const Json& edge : node.at("edges")) {
            spec.fixed_edges.emplace_back(edge.at(0).get<int>(),
                                          edge.at(1).get<int>());
          }
        } else {
          throw ConfigError("unknown facilitator strategy '" + strategy + "'");
        }
        config.facilitators.push_back(std::move(spec));
      }
    }
    return config;
  } catch (const Json::exception& err) {
    throw ConfigError("config " + path.string() + ": " + err.what());
  }
}

}  // namespace kgsim
