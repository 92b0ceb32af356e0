#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "kgsim/coopgame.hpp"
#include "kgsim/engine.hpp"
#include "kgsim/experiments.hpp"
#include "kgsim/report.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 2;
constexpr int kExitUsage = 64;
constexpr int kExitIo = 74;

fs::path resolve_out_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return fs::path(flag_value);
  if (const char* env = std::getenv("KGSIM_OUT"); env && *env) {
    return fs::path(env);
  }
  throw kgsim::ConfigError(
      "no output directory: pass --out or set KGSIM_OUT");
}

kgsim::TaskId require_task(const std::string& name) {
  auto task = kgsim::parse_task(name);
  if (!task) {
    throw kgsim::ConfigError("unknown task '" + name +
                             "' (expected one|one-k2|two|three)");
  }
  return *task;
}

void print_run_summary(const kgsim::RunResult& run,
                       const kgsim::RunArtifacts& art) {
  std::cout << "Stage log: " << art.stage_log.string() << "\n";
  std::cout << "Series CSV: " << art.series_dir.string() << "\n";
  std::cout << "Plots:\n";
  for (const char* name :
       {"reward.svg", "knowledge.svg", "shapley.svg", "knowledge_split.svg"}) {
    std::cout << "  " << (art.plots_dir / name).string() << "\n";
  }
  std::cout << "\n" << kgsim::run_report_text(run);
}

struct RunOptions {
  std::string task = "one";
  std::string variant = "random";
  std::string config_file;
  int stages = 10;
  std::uint64_t seed = 42;
  std::string out;
  int clique_min_size = 1;
  double leave_p = 0.2;
  bool maximal_cliques = false;
  int corrupt_stage = -1;
  bool stages_set = false;
  bool seed_set = false;
};

int cmd_run(const RunOptions& opt) {
  kgsim::SimulationConfig config;
  if (!opt.config_file.empty()) {
    config = kgsim::load_config_json(opt.config_file);
    if (opt.stages_set) config.stages = opt.stages;
    if (opt.seed_set) config.seed = opt.seed;
  } else {
    auto variant = kgsim::parse_variant(opt.variant);
    if (!variant) {
      throw kgsim::ConfigError("unknown variant '" + opt.variant +
                               "' (expected random|fixed)");
    }
    config = kgsim::build_task(require_task(opt.task), *variant);
    config.stages = opt.stages;
    config.seed = opt.seed;
    config.clique_min_size = opt.clique_min_size;
    config.leave_gate_p = opt.leave_p;
    config.maximal_cliques_only = opt.maximal_cliques;
  }
  if (opt.corrupt_stage >= 0) {
    config.corrupt_counters_at_stage = opt.corrupt_stage;
  }

  const fs::path out_dir = resolve_out_dir(opt.out);
  try {
    kgsim::RunResult run = kgsim::run_simulation(config);
    const kgsim::RunArtifacts art = kgsim::write_run_artifacts(run, out_dir);
    print_run_summary(run, art);
    return kExitOk;
  } catch (const kgsim::InvariantViolation& violation) {
    // Flush everything recorded so far, then fail loudly.
    const kgsim::RunArtifacts art =
        kgsim::write_run_artifacts(violation.result, out_dir);
    std::cerr << "invariant violation: " << violation.what() << "\n";
    std::cerr << "stage log flushed to " << art.stage_log.string() << "\n";
    return kExitInvariant;
  }
}

int cmd_compare(const std::string& task_name, int stages, std::uint64_t seed,
                const std::string& out) {
  const fs::path out_dir = resolve_out_dir(out);
  const kgsim::TaskId task = require_task(task_name);
  try {
    kgsim::ComparisonReport report =
        kgsim::compare_strategies(task, stages, seed);
    kgsim::write_run_artifacts(report.random_run, out_dir);
    kgsim::write_run_artifacts(report.fixed_run, out_dir);
    const std::string text = kgsim::comparison_text(report);
    const fs::path report_path =
        out_dir / ("compare-" + std::string(kgsim::task_name(task)) + "-s" +
                   std::to_string(seed) + ".txt");
    {
      std::error_code ec;
      fs::create_directories(out_dir, ec);
      if (ec) throw kgsim::IoError("cannot create " + out_dir.string());
    }
    std::ofstream file(report_path, std::ios::binary | std::ios::trunc);
    if (!file) throw kgsim::IoError("cannot write " + report_path.string());
    file << text;
    std::cout << text;
    std::cout << "Report: " << report_path.string() << "\n";
    return kExitOk;
  } catch (const kgsim::InvariantViolation& violation) {
    const kgsim::RunArtifacts art =
        kgsim::write_run_artifacts(violation.result, out_dir);
    std::cerr << "invariant violation: " << violation.what() << "\n";
    std::cerr << "stage log flushed to " << art.stage_log.string() << "\n";
    return kExitInvariant;
  }
}

int cmd_montecarlo(const std::string& task_name, int stages, int runs,
                   std::uint64_t seed, const std::string& out) {
  const fs::path out_dir = resolve_out_dir(out);
  const kgsim::TaskId task = require_task(task_name);
  kgsim::MonteCarloSummary summary =
      kgsim::monte_carlo(task, stages, runs, seed);
  const std::string text = kgsim::monte_carlo_text(summary);
  const fs::path report_path =
      out_dir / ("montecarlo-" + std::string(kgsim::task_name(task)) + "-s" +
                 std::to_string(seed) + "-r" + std::to_string(runs) + ".txt");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw kgsim::IoError("cannot create " + out_dir.string());
  std::ofstream file(report_path, std::ios::binary | std::ios::trunc);
  if (!file) throw kgsim::IoError("cannot write " + report_path.string());
  file << text;
  std::cout << text;
  std::cout << "Report: " << report_path.string() << "\n";
  return kExitOk;
}

// Compact property suite over the built-in tasks: correctness invariant,
// Shapley oracle agreement, clique counts, probability bounds.
int cmd_selftest() {
  int failures = 0;
  auto check = [&failures](bool ok, const std::string& what) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << what << "\n";
    if (!ok) ++failures;
  };

  using kgsim::TaskId;
  using kgsim::Variant;
  for (TaskId task :
       {TaskId::One, TaskId::OneCompareK2, TaskId::Two, TaskId::Three}) {
    for (Variant variant : {Variant::Random, Variant::Fixed}) {
      bool ok = true;
      std::string detail;
      for (std::uint64_t seed = 1; seed <= 10 && ok; ++seed) {
        kgsim::SimulationConfig config = kgsim::build_task(task, variant);
        config.seed = seed;
        try {
          kgsim::RunResult run = kgsim::run_simulation(config);
          for (const auto& rec : run.records) ok = ok && rec.invariant_held;
          ok = ok && kgsim::check_probability_bounds(run.records).empty();
        } catch (const std::exception& err) {
          ok = false;
          detail = err.what();
        }
      }
      check(ok, std::string("invariant holds: task ") +
                    kgsim::task_name(task) + " variant " +
                    kgsim::variant_name(variant) +
                    (detail.empty() ? "" : " (" + detail + ")"));
    }
  }

  {
    bool ok = true;
    for (std::uint64_t seed = 1; seed <= 5 && ok; ++seed) {
      kgsim::SimulationConfig config =
          kgsim::build_task(TaskId::One, Variant::Random);
      config.seed = seed;
      kgsim::RunResult run = kgsim::run_simulation(config);
      const auto& org = run.world.organizations.at(1);
      kgsim::ShapleyVector closed =
          kgsim::shapley_closed_form(org, run.world);
      kgsim::ShapleyVector brute = kgsim::shapley_bruteforce(org, run.world);
      for (const auto& [id, value] : closed.values) {
        ok = ok && std::abs(value - brute.values.at(id)) <= 1e-9;
      }
    }
    check(ok, "shapley closed form matches brute-force oracle");
  }

  {
    kgsim::Organization triangle;
    triangle.id = 1;
    triangle.members = {1, 2, 3};
    triangle.permanent_edges = {{1, 2}, {1, 3}, {2, 3}};
    kgsim::TempEdgeSet no_temp;
    check(kgsim::enumerate_cliques(triangle, no_temp, 1).size() == 7,
          "triangle graph has 7 cliques");
  }

  return failures == 0 ? kExitOk : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator of knowledge creation and diffusion across "
               "organizations of inventors"};
  app.require_subcommand(1);

  RunOptions run_opt;
  CLI::App* run = app.add_subcommand(
      "run", "Run one task variant (or a custom JSON config) and write "
             "stage log, CSV series, SVG plots and a report");
  run->add_option("--task", run_opt.task, "one|one-k2|two|three");
  run->add_option("--variant", run_opt.variant, "random|fixed");
  run->add_option("--config", run_opt.config_file,
                  "custom scenario JSON (overrides --task/--variant)");
  auto* stages_opt =
      run->add_option("--stages", run_opt.stages, "number of stages")
          ->check(CLI::NonNegativeNumber);
  auto* seed_opt = run->add_option("--seed", run_opt.seed, "run seed");
  run->add_option("--out", run_opt.out,
                  "output directory (default: $KGSIM_OUT)");
  run->add_option("--clique-min-size", run_opt.clique_min_size,
                  "minimum clique size considered (default 1)");
  run->add_option("--leave-p", run_opt.leave_p,
                  "leaving-step gate probability (default 0.2)");
  run->add_flag("--maximal-cliques", run_opt.maximal_cliques,
                "restrict selection to maximal cliques");
  run->add_option("--inject-counter-corruption", run_opt.corrupt_stage,
                  "test hook: corrupt counters after the given stage")
      ->group("");  // hidden

  std::string cmp_task = "one";
  int cmp_stages = 10;
  std::uint64_t cmp_seed = 42;
  std::string cmp_out;
  CLI::App* compare = app.add_subcommand(
      "compare",
      "Run both strategy variants from the same seed and report which "
      "created more knowledge and which rewarded the tg more");
  compare->add_option("--task", cmp_task, "one|one-k2|two|three");
  compare->add_option("--stages", cmp_stages, "number of stages")
      ->check(CLI::NonNegativeNumber);
  compare->add_option("--seed", cmp_seed, "shared seed");
  compare->add_option("--out", cmp_out, "output directory");

  std::string mc_task = "one";
  int mc_stages = 10;
  int mc_runs = 100;
  std::uint64_t mc_seed = 42;
  std::string mc_out;
  CLI::App* montecarlo = app.add_subcommand(
      "montecarlo", "Average both variants over R seeded runs");
  montecarlo->add_option("--task", mc_task, "one|one-k2|two|three");
  montecarlo->add_option("--stages", mc_stages, "number of stages")
      ->check(CLI::NonNegativeNumber);
  montecarlo->add_option("--runs", mc_runs, "number of runs per variant")
      ->check(CLI::PositiveNumber);
  montecarlo->add_option("--seed", mc_seed, "base seed");
  montecarlo->add_option("--out", mc_out, "output directory");

  CLI::App* selftest = app.add_subcommand(
      "selftest", "Run the built-in invariant and oracle property suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    if (err.get_exit_code() == 0) return app.exit(err);  // --help
    app.exit(err);
    return kExitUsage;
  }

  try {
    if (run->parsed()) {
      run_opt.stages_set = stages_opt->count() > 0;
      run_opt.seed_set = seed_opt->count() > 0;
      return cmd_run(run_opt);
    }
    if (compare->parsed()) {
      return cmd_compare(cmp_task, cmp_stages, cmp_seed, cmp_out);
    }
    if (montecarlo->parsed()) {
      return cmd_montecarlo(mc_task, mc_stages, mc_runs, mc_seed, mc_out);
    }
    if (selftest->parsed()) {
      return cmd_selftest();
    }
  } catch (const kgsim::ConfigError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const kgsim::IoError& err) {
    std::cerr << "io error: " << err.what() << "\n";
    return kExitIo;
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
