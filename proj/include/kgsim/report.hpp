#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "kgsim/engine.hpp"
#include "kgsim/experiments.hpp"

namespace kgsim {

// Artifact layout for one run, all under a single output directory:
//   <out>/<run_id>/stage_log.jsonl
//   <out>/<run_id>/series/{reward,knowledge,shapley,totals}.csv
//   <out>/<run_id>/plots/{reward,knowledge,shapley,knowledge_split}.svg
//   <out>/<run_id>/report.txt
struct RunArtifacts {
  std::filesystem::path root;
  std::filesystem::path stage_log;
  std::filesystem::path series_dir;
  std::filesystem::path plots_dir;
  std::filesystem::path report;
};

RunArtifacts plan_artifacts(const std::filesystem::path& out_dir,
                            const std::string& run_id);

// --- stage log (JSON Lines, fixed key order) -------------------------------

std::string stage_log_text(const RunResult& run);
void write_stage_log(const RunResult& run, const std::filesystem::path& path);

// --- series CSV -------------------------------------------------------------

struct SeriesCsvText {
  std::string reward;     // stage, cumulative reward per facilitator
  std::string knowledge;  // stage, |B_i| and current org per inventor
  std::string shapley;    // stage, phi per inventor
  std::string totals;     // stage, total knowledge, no-tg, reward sum
};

SeriesCsvText series_csv_text(const RunResult& run);
void write_series_csv(const RunResult& run, const std::filesystem::path& dir);

// --- SVG plots ---------------------------------------------------------------

// One line per entity. color_group has one entry per point; a group change
// (an organization move) splits the polyline into differently colored
// segments. Singleton segments render as point markers.
struct ChartSeries {
  std::string label;
  std::vector<double> values;
  std::vector<int> color_group;  // same length as values
};

struct LineChart {
  std::string title;
  std::string x_label = "stage";
  std::string y_label;
  std::vector<ChartSeries> series;
};

std::string render_line_chart(const LineChart& chart);

// Single stacked bar splitting total knowledge into the organic share and
// the per-facilitator shares, with one-decimal percentage labels. A zero
// total renders an empty bar labeled "no knowledge created".
std::string render_split_bar(const std::string& title, int total, int no_tg,
                             const std::map<std::string, int>& per_tg);

// --- origin table ------------------------------------------------------------

struct OriginTable {
  std::vector<OrgId> orgs;
  struct Row {
    InventorId inventor = 0;
    int item_count = 0;
    std::vector<double> percent;  // one per org, sums to 100 unless empty
  };
  std::vector<Row> rows;
};

// Percentage of each inventor's knowledge that originated in each
// organization. Meaningful (and emitted by the CLI) only when m > 1.
OriginTable origin_table(const WorldState& world);
std::string origin_table_text(const OriginTable& table);

// Rounds parts-of-total to one-decimal percentages that sum to exactly
// 100.0 by assigning the rounding residue to the largest share.
std::vector<double> rounded_percentages(const std::vector<long long>& parts);

// --- text reports -------------------------------------------------------------

// Compact unicode sparkline of a series (empty series -> empty string).
std::string sparkline(const std::vector<double>& values);

std::string run_report_text(const RunResult& run);
std::string comparison_text(const ComparisonReport& report);
std::string monte_carlo_text(const MonteCarloSummary& summary);

// Writes stage log, CSVs, SVGs and report.txt; returns the planned paths.
// Throws IoError on filesystem failure.
RunArtifacts write_run_artifacts(const RunResult& run,
                                 const std::filesystem::path& out_dir);

// --- custom scenario config (JSON) --------------------------------------------

// Schema (see README): label, stages, seed, leave_p, clique_min_size,
// maximal_cliques_only, organizations[{id, members, edges}],
// facilitators[{id, org, budget, strategy: "random"|"fixed", edges}].
SimulationConfig load_config_json(const std::filesystem::path& path);

}  // namespace kgsim
