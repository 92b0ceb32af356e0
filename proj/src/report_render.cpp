#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "kgsim/report.hpp"

namespace kgsim {

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 460.0;
constexpr double kMarginLeft = 62.0;
constexpr double kMarginRight = 170.0;
constexpr double kMarginTop = 46.0;
constexpr double kMarginBottom = 46.0;

const char* kPalette[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
    "#aec7e8", "#ffbb78", "#98df8a", "#ff9896", "#c5b0d5",
    "#c49c94", "#f7b6d2", "#c7c7c7", "#dbdb8d", "#9edae5",
};
constexpr int kPaletteSize = 20;

const char* color_of(int series_index, int group) {
  int idx = (series_index + 7 * group) % kPaletteSize;
  if (idx < 0) idx += kPaletteSize;
  return kPalette[idx];
}

std::string num(double value) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

std::string num_label(double value) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%g", value);
  return buf;
}

std::string escape_xml(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string one_decimal(double value) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.1f", value);
  return buf;
}

}  // namespace

std::vector<double> rounded_percentages(const std::vector<long long>& parts) {
  long long total = 0;
  for (long long part : parts) total += part;
  std::vector<double> out(parts.size(), 0.0);
  if (total <= 0) return out;

  double sum = 0.0;
  std::size_t largest = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const double raw = 100.0 * static_cast<double>(parts[i]) /
                       static_cast<double>(total);
    out[i] = std::round(raw * 10.0) / 10.0;
    sum += out[i];
    if (parts[i] > parts[largest]) largest = i;
  }
  // One-decimal rounding residue goes to the largest share so displayed
  // rows always sum to 100.0.
  const double residue = std::round((100.0 - sum) * 10.0) / 10.0;
  out[largest] = std::round((out[largest] + residue) * 10.0) / 10.0;
  return out;
}

std::string render_line_chart(const LineChart& chart) {
  std::size_t points = 0;
  double max_value = 0.0;
  for (const ChartSeries& s : chart.series) {
    points = std::max(points, s.values.size());
    for (double v : s.values) max_value = std::max(max_value, v);
  }
  if (max_value <= 0.0) max_value = 1.0;
  const std::size_t stages = points > 0 ? points - 1 : 0;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto x_of = [&](std::size_t i) {
    return stages == 0
               ? kMarginLeft + plot_w / 2.0
               : kMarginLeft + plot_w * static_cast<double>(i) /
                     static_cast<double>(stages);
  };
  auto y_of = [&](double v) {
    return kMarginTop + plot_h * (1.0 - v / max_value);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << num(kWidth / 2.0)
      << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"15\">"
      << escape_xml(chart.title) << "</text>\n";

  // axes
  svg << "<line x1=\"" << num(kMarginLeft) << "\" y1=\"" << num(kMarginTop)
      << "\" x2=\"" << num(kMarginLeft) << "\" y2=\""
      << num(kHeight - kMarginBottom) << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << num(kMarginLeft) << "\" y1=\""
      << num(kHeight - kMarginBottom) << "\" x2=\""
      << num(kWidth - kMarginRight) << "\" y2=\""
      << num(kHeight - kMarginBottom) << "\" stroke=\"black\"/>\n";

  // x ticks at integer stages
  const std::size_t x_step = stages > 10 ? (stages + 9) / 10 : 1;
  for (std::size_t i = 0; i <= stages; i += x_step) {
    const double x = x_of(i);
    svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(kHeight - kMarginBottom)
        << "\" x2=\"" << num(x) << "\" y2=\""
        << num(kHeight - kMarginBottom + 5) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << num(x) << "\" y=\""
        << num(kHeight - kMarginBottom + 18)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << i << "</text>\n";
  }
  svg << "<text x=\"" << num(kMarginLeft + plot_w / 2.0) << "\" y=\""
      << num(kHeight - 10)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">"
      << escape_xml(chart.x_label) << "</text>\n";

  // y ticks
  for (int t = 0; t <= 4; ++t) {
    const double v = max_value * t / 4.0;
    const double y = y_of(v);
    svg << "<line x1=\"" << num(kMarginLeft - 5) << "\" y1=\"" << num(y)
        << "\" x2=\"" << num(kMarginLeft) << "\" y2=\"" << num(y)
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << num(kMarginLeft - 9) << "\" y=\"" << num(y + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << num_label(v) << "</text>\n";
  }
  svg << "<text x=\"16\" y=\"" << num(kMarginTop + plot_h / 2.0)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\" transform=\"rotate(-90 16 "
      << num(kMarginTop + plot_h / 2.0) << ")\">" << escape_xml(chart.y_label)
      << "</text>\n";

  // Series are split into color segments at group changes. Step k (between
  // points k and k+1) takes the group of its source point, so consecutive
  // segments share the transition point and the curve stays continuous.
  for (std::size_t s = 0; s < chart.series.size(); ++s) {
    const ChartSeries& series = chart.series[s];
    const std::size_t n = series.values.size();
    if (n == 0) continue;
    if (n == 1) {
      svg << "<circle cx=\"" << num(x_of(0)) << "\" cy=\""
          << num(y_of(series.values[0])) << "\" r=\"3\" fill=\""
          << color_of(static_cast<int>(s), series.color_group[0]) << "\"/>\n";
      continue;
    }
    std::size_t k = 0;
    while (k < n - 1) {
      const int group = series.color_group[k];
      std::size_t e = k;
      while (e + 1 < n - 1 && series.color_group[e + 1] == group) ++e;
      svg << "<polyline fill=\"none\" stroke=\""
          << color_of(static_cast<int>(s), group)
          << "\" stroke-width=\"1.8\" points=\"";
      for (std::size_t p = k; p <= e + 1; ++p) {
        if (p > k) svg << " ";
        svg << num(x_of(p)) << "," << num(y_of(series.values[p]));
      }
      svg << "\"/>\n";
      k = e + 1;
    }
  }

  // legend
  double legend_y = kMarginTop + 4.0;
  for (std::size_t s = 0; s < chart.series.size(); ++s) {
    const ChartSeries& series = chart.series[s];
    const int group = series.color_group.empty() ? 0 : series.color_group.front();
    svg << "<rect x=\"" << num(kWidth - kMarginRight + 16) << "\" y=\""
        << num(legend_y) << "\" width=\"14\" height=\"4\" fill=\""
        << color_of(static_cast<int>(s), group) << "\"/>\n";
    svg << "<text x=\"" << num(kWidth - kMarginRight + 36) << "\" y=\""
        << num(legend_y + 6)
        << "\" font-family=\"sans-serif\" font-size=\"11\">"
        << escape_xml(series.label) << "</text>\n";
    legend_y += 17.0;
  }

  svg << "</svg>\n";
  return svg.str();
}

std::string render_split_bar(const std::string& title, int total, int no_tg,
                             const std::map<std::string, int>& per_tg) {
  constexpr double width = 860.0;
  constexpr double height = 180.0;
  constexpr double bar_x = 40.0;
  constexpr double bar_y = 70.0;
  constexpr double bar_w = 780.0;
  constexpr double bar_h = 48.0;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << num(width / 2.0)
      << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"15\">"
      << escape_xml(title) << "</text>\n";

  if (total <= 0) {
    svg << "<rect x=\"" << num(bar_x) << "\" y=\"" << num(bar_y)
        << "\" width=\"" << num(bar_w) << "\" height=\"" << num(bar_h)
        << "\" fill=\"none\" stroke=\"#7f7f7f\"/>\n";
    svg << "<text x=\"" << num(width / 2.0) << "\" y=\""
        << num(bar_y + bar_h / 2.0 + 5)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\" fill=\"#7f7f7f\">no knowledge created</text>\n";
    svg << "</svg>\n";
    return svg.str();
  }

  std::vector<std::string> labels{"no tg"};
  std::vector<long long> parts{no_tg};
  for (const auto& [id, r] : per_tg) {
    labels.push_back(id);
    parts.push_back(r);
  }
  const std::vector<double> pct = rounded_percentages(parts);

  double x = bar_x;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const double w = bar_w * static_cast<double>(parts[i]) /
                     static_cast<double>(total);
    svg << "<rect x=\"" << num(x) << "\" y=\"" << num(bar_y) << "\" width=\""
        << num(w) << "\" height=\"" << num(bar_h) << "\" fill=\""
        << kPalette[i % kPaletteSize] << "\"/>\n";
    const std::string label =
        labels[i] + " " + std::to_string(parts[i]) + " (" +
        one_decimal(pct[i]) + "%)";
    const double label_y = bar_y + bar_h + 22.0 + 16.0 * (i % 2);
    svg << "<rect x=\"" << num(x) << "\" y=\"" << num(label_y - 9)
        << "\" width=\"8\" height=\"8\" fill=\"" << kPalette[i % kPaletteSize]
        << "\"/>\n";
    svg << "<text x=\"" << num(x + 12) << "\" y=\"" << num(label_y)
        << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << escape_xml(label) << "</text>\n";
    x += w;
  }
  svg << "<rect x=\"" << num(bar_x) << "\" y=\"" << num(bar_y) << "\" width=\""
      << num(bar_w) << "\" height=\"" << num(bar_h)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

OriginTable origin_table(const WorldState& world) {
  OriginTable table;
  for (const auto& [id, org] : world.organizations) table.orgs.push_back(id);
  for (const auto& [id, inventor] : world.inventors) {
    OriginTable::Row row;
    row.inventor = id;
    row.item_count = static_cast<int>(inventor.knowledge.size());
    std::vector<long long> per_org(table.orgs.size(), 0);
    for (ItemId item : inventor.knowledge) {
      const OrgId origin = world.items.at(item).origin;
      for (std::size_t i = 0; i < table.orgs.size(); ++i) {
        if (table.orgs[i] == origin) {
          per_org[i] += 1;
          break;
        }
      }
    }
    row.percent = rounded_percentages(per_org);
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string origin_table_text(const OriginTable& table) {
  auto pad = [](std::string text, std::size_t width) {
    while (text.size() < width) text += ' ';
    return text;
  };
  std::ostringstream out;
  out << "Knowledge origin by organization (% of each inventor's items)\n";
  out << pad("inventor", 10);
  for (OrgId org : table.orgs) {
    out << pad("org" + std::to_string(org) + "(%)", 10);
  }
  out << "items\n";
  for (const auto& row : table.rows) {
    out << pad(inventor_label(row.inventor), 10);
    if (row.item_count == 0) {
      out << "no items\n";
      continue;
    }
    for (std::size_t i = 0; i < table.orgs.size(); ++i) {
      out << pad(one_decimal(row.percent[i]), 10);
    }
    out << row.item_count << "\n";
  }
  return out.str();
}

std::string sparkline(const std::vector<double>& values) {
  static const char* kBlocks[] = {"▁", "▂", "▃", "▄",
                                  "▅", "▆", "▇", "█"};
  if (values.empty()) return "";
  double lo = values.front();
  double hi = values.front();
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::string out;
  for (double v : values) {
    int level = 0;
    if (hi > lo) {
      level = static_cast<int>(std::floor((v - lo) / (hi - lo) * 7.999));
      level = std::clamp(level, 0, 7);
    }
    out += kBlocks[level];
  }
  return out;
}

std::string run_report_text(const RunResult& run) {
  std::ostringstream out;
  const Snapshot& final_snap = run.series.back();
  int reward_sum = 0;
  for (const auto& [id, r] : final_snap.rewards) reward_sum += r;

  out << "Run " << run.run_id << ": " << run.config.stages << " stages, seed "
      << run.config.seed << "\n";
  out << "Final knowledge: " << final_snap.total_knowledge << " items\n";

  std::vector<long long> parts{final_snap.no_tg_knowledge};
  std::vector<std::string> labels{"no-tg"};
  for (const auto& [id, r] : final_snap.rewards) {
    parts.push_back(r);
    labels.push_back(id);
  }
  out << "Knowledge split:";
  if (final_snap.total_knowledge == 0) {
    out << " no knowledge created\n";
  } else {
    const std::vector<double> pct = rounded_percentages(parts);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      out << (i == 0 ? " " : ", ") << labels[i] << " " << parts[i] << " ("
          << one_decimal(pct[i]) << "%)";
    }
    out << "\n";
  }

  std::vector<double> totals;
  for (const Snapshot& snap : run.series) {
    totals.push_back(snap.total_knowledge);
  }
  out << "total knowledge  " << sparkline(totals) << "  final "
      << final_snap.total_knowledge << "\n";
  for (const auto& [id, r] : final_snap.rewards) {
    std::vector<double> series;
    for (const Snapshot& snap : run.series) {
      series.push_back(snap.rewards.at(id));
    }
    out << "reward " << id << "        " << sparkline(series) << "  final "
        << r << "\n";
  }

  if (run.movements.empty()) {
    out << "Movements: none\n";
  } else {
    out << "Movements:\n";
    for (const MovementEvent& move : run.movements) {
      out << "  stage " << move.stage << ": " << inventor_label(move.inventor)
          << " left org " << move.from << " and joined org " << move.to
          << "\n";
    }
  }

  int skipped = 0;
  for (const StageRecord& rec : run.records) {
    skipped += static_cast<int>(rec.skipped_fixed_edges.size());
  }
  if (skipped > 0) {
    out << "Fixed facilitator pairs skipped as infeasible: " << skipped
        << "\n";
  }

  if (run.world.organizations.size() > 1) {
    out << "\n" << origin_table_text(origin_table(run.world));
  }
  return out.str();
}

std::string comparison_text(const ComparisonReport& report) {
  std::ostringstream out;
  out << "Strategy comparison — task " << task_name(report.task) << ", "
      << report.stages << " stages, seed " << report.seed
      << " (common random numbers)\n";
  for (const StrategyOutcome* outcome :
       {&report.random_outcome, &report.fixed_outcome}) {
    out << "  " << outcome->variant << ": final knowledge "
        << outcome->final_total_knowledge << ", tg reward "
        << outcome->reward_total();
    if (outcome->final_total_knowledge > 0) {
      const std::vector<double> pct = rounded_percentages(
          {outcome->no_tg_knowledge, outcome->tg_knowledge});
      out << ", split no-tg " << outcome->no_tg_knowledge << " ("
          << one_decimal(pct[0]) << "%) / tg " << outcome->tg_knowledge
          << " (" << one_decimal(pct[1]) << "%)";
    } else {
      out << ", no knowledge created";
    }
    out << "\n";
  }
  out << "Which strategy created more knowledge: " << report.knowledge_winner
      << " (" << report.random_outcome.final_total_knowledge << " vs "
      << report.fixed_outcome.final_total_knowledge << ")\n";
  out << "Which strategy gave the tg more reward: " << report.reward_winner
      << " (" << report.random_outcome.reward_total() << " vs "
      << report.fixed_outcome.reward_total() << ")\n";
  return out.str();
}

std::string monte_carlo_text(const MonteCarloSummary& summary) {
  auto fixed2 = [](double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return std::string(buf);
  };
  std::ostringstream out;
  out << "Monte Carlo — task " << task_name(summary.task) << ", "
      << summary.stages << " stages, " << summary.runs << " runs, seeds "
      << summary.base_seed << ".."
      << summary.base_seed + static_cast<std::uint64_t>(summary.runs) - 1
      << "\n";
  for (const VariantStats* stats :
       {&summary.random_stats, &summary.fixed_stats}) {
    out << "  " << stats->variant << ": knowledge mean "
        << fixed2(stats->mean_knowledge) << " (sd "
        << fixed2(stats->stddev_knowledge) << ", min " << stats->min_knowledge
        << ", max " << stats->max_knowledge << "), reward mean "
        << fixed2(stats->mean_reward) << " (sd " << fixed2(stats->stddev_reward)
        << ", min " << stats->min_reward << ", max " << stats->max_reward
        << ")\n";
  }
  out << "Which strategy created more knowledge: " << summary.knowledge_winner
      << " (mean " << fixed2(summary.random_stats.mean_knowledge) << " vs "
      << fixed2(summary.fixed_stats.mean_knowledge) << ")\n";
  out << "Which strategy gave the tg more reward: " << summary.reward_winner
      << " (mean " << fixed2(summary.random_stats.mean_reward) << " vs "
      << fixed2(summary.fixed_stats.mean_reward) << ")\n";
  return out.str();
}

}  // namespace kgsim
