#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "experiment.hpp"

using namespace evoc;
namespace fs = std::filesystem;

namespace {

TemplateSet load_data(const char* name) {
  return load_template_set_file(std::string(EVOC_DATA_DIR) + "/" + name);
}

ExperimentConfig small_experiment(const fs::path& out_dir) {
  ExperimentConfig cfg;
  cfg.base.grid_width = 4;
  cfg.base.grid_height = 4;
  cfg.base.iterations = 16;
  cfg.base.switch_iteration = 8;
  cfg.runs = 4;
  cfg.conditions = {Condition::Neither, Condition::ChainingOnly, Condition::ChainingAndCf};
  cfg.output_dir = out_dir.string();
  cfg.base_seed = 99;
  return cfg;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("condition names and toggles") {
  CHECK(std::string(condition_name(Condition::ChainingAndCf)) == "chaining_and_cf");
  CHECK(condition_from_name("cf_only") == Condition::CfOnly);
  CHECK_FALSE(condition_from_name("bogus").has_value());
  SocietyConfig cfg;
  apply_condition(cfg, Condition::ChainingOnly);
  CHECK(cfg.chaining_enabled);
  CHECK_FALSE(cfg.cf_enabled);
  apply_condition(cfg, Condition::CfOnly);
  CHECK_FALSE(cfg.chaining_enabled);
  CHECK(cfg.cf_enabled);
}

TEST_CASE("run seeds are condition- and run-scoped") {
  const auto s00 = derive_run_seed(5, Condition::Neither, 0);
  CHECK(derive_run_seed(5, Condition::Neither, 0) == s00);
  CHECK(derive_run_seed(5, Condition::Neither, 1) != s00);
  CHECK(derive_run_seed(5, Condition::ChainingOnly, 0) != s00);
  CHECK(derive_run_seed(6, Condition::Neither, 0) != s00);
}

TEST_CASE("a single-run aggregate equals that run's metrics with zero standard error") {
  const TemplateSet ff1 = load_data("ff1.tmpl");
  const TemplateSet ff2 = load_data("ff2.tmpl");
  TempDir dir("evoc_test_single");
  ExperimentConfig cfg = small_experiment(dir.path);
  cfg.runs = 1;
  cfg.conditions = {Condition::ChainingOnly};
  const AggregateMetrics agg = run_batch(cfg, ff1, ff2);
  REQUIRE(agg.per_condition.size() == 1);

  SocietyConfig one = cfg.base;
  apply_condition(one, Condition::ChainingOnly);
  one.seed = derive_run_seed(cfg.base_seed, Condition::ChainingOnly, 0);
  const RunMetrics direct = run(one, ff1, &ff2).metrics;
  const auto& cond = agg.per_condition[0];
  REQUIRE(cond.mean_fitness.size() == direct.mean_fitness.size());
  for (std::size_t t = 0; t < direct.mean_fitness.size(); ++t) {
    CHECK(cond.mean_fitness[t] == doctest::Approx(direct.mean_fitness[t]));
    CHECK(cond.se_fitness[t] == 0.0);
    CHECK(cond.mean_diversity[t] == doctest::Approx(direct.diversity[t]));
  }
}

TEST_CASE("the aggregate mean is the arithmetic mean of the per-run values") {
  const TemplateSet ff1 = load_data("ff1.tmpl");
  const TemplateSet ff2 = load_data("ff2.tmpl");
  TempDir dir("evoc_test_linearity");
  ExperimentConfig cfg = small_experiment(dir.path);
  cfg.conditions = {Condition::Neither};
  const AggregateMetrics agg = run_batch(cfg, ff1, ff2);

  std::vector<RunMetrics> runs;
  for (int r = 0; r < cfg.runs; ++r) {
    SocietyConfig one = cfg.base;
    apply_condition(one, Condition::Neither);
    one.seed = derive_run_seed(cfg.base_seed, Condition::Neither, r);
    runs.push_back(run(one, ff1, &ff2).metrics);
  }
  const auto& cond = agg.per_condition[0];
  for (std::size_t t = 0; t < cond.mean_fitness.size(); ++t) {
    double sum = 0;
    for (const auto& m : runs) sum += m.mean_fitness[t];
    CHECK(cond.mean_fitness[t] == doctest::Approx(sum / cfg.runs).epsilon(1e-12));
  }

  // Permuting the runs leaves the mean unchanged to well under 1e-9.
  for (std::size_t t = 0; t < cond.mean_fitness.size(); ++t) {
    double reversed = 0;
    for (auto it = runs.rbegin(); it != runs.rend(); ++it) reversed += it->mean_fitness[t];
    CHECK(std::abs(reversed / cfg.runs - cond.mean_fitness[t]) < 1e-9);
  }
}

TEST_CASE("worker count does not change the results") {
  const TemplateSet ff1 = load_data("ff1.tmpl");
  const TemplateSet ff2 = load_data("ff2.tmpl");
  TempDir dir1("evoc_test_w1");
  TempDir dir8("evoc_test_w8");
  ExperimentConfig cfg1 = small_experiment(dir1.path);
  cfg1.workers = 1;
  ExperimentConfig cfg8 = small_experiment(dir8.path);
  cfg8.workers = 8;

  write_outputs(run_batch(cfg1, ff1, ff2), cfg1);
  write_outputs(run_batch(cfg8, ff1, ff2), cfg8);
  for (const char* name : {"neither.csv", "chaining_only.csv", "chaining_and_cf.csv",
                           "mean_fitness.svg", "diversity.svg", "summary.txt"}) {
    CHECK(slurp(dir1.path / name) == slurp(dir8.path / name));
  }
}

TEST_CASE("conditions are isolated from one another") {
  const TemplateSet ff1 = load_data("ff1.tmpl");
  const TemplateSet ff2 = load_data("ff2.tmpl");
  TempDir dir("evoc_test_isolation");
  ExperimentConfig narrow = small_experiment(dir.path);
  narrow.conditions = {Condition::Neither};
  ExperimentConfig wide = small_experiment(dir.path);
  wide.conditions = {Condition::Neither, Condition::CfOnly, Condition::ChainingAndCf};

  const auto a = run_batch(narrow, ff1, ff2);
  const auto b = run_batch(wide, ff1, ff2);
  const auto* lone = a.find(Condition::Neither);
  const auto* grouped = b.find(Condition::Neither);
  REQUIRE(lone);
  REQUIRE(grouped);
  CHECK(lone->mean_fitness == grouped->mean_fitness);
  CHECK(lone->mean_diversity == grouped->mean_diversity);
}

TEST_CASE("recovery statistic") {
  ConditionAggregate agg;
  agg.mean_fitness = {10, 12, 14, 14, 14, 14};
  SUBCASE("no drop at the switch recovers immediately") {
    // switch at 3: value 14 >= 0.9 * 14 already
    CHECK(recovery_statistic(agg, 3, 0.9) == 0);
  }
  SUBCASE("a drop that climbs back") {
    agg.mean_fitness = {10, 12, 14, 7, 9, 12, 13, 14};
    CHECK(recovery_statistic(agg, 3, 0.9) == 3);  // 13 >= 0.9 * 14 = 12.6
  }
  SUBCASE("never recovering yields nothing") {
    agg.mean_fitness = {10, 12, 14, 7, 8, 8, 8, 8};
    CHECK_FALSE(recovery_statistic(agg, 3, 0.9).has_value());
  }
}

TEST_CASE("least-squares slope on exact data") {
  std::vector<double> line;
  for (int i = 0; i < 40; ++i) line.push_back(3.0 + 0.75 * i);
  CHECK(least_squares_slope(line, 10, 30) == doctest::Approx(0.75));
  std::vector<double> flat(40, 5.0);
  CHECK(least_squares_slope(flat, 10, 30) == doctest::Approx(0.0));
}

TEST_CASE("output files: one CSV per condition, two charts, one summary") {
  const TemplateSet ff1 = load_data("ff1.tmpl");
  const TemplateSet ff2 = load_data("ff2.tmpl");
  TempDir dir("evoc_test_outputs");
  const ExperimentConfig cfg = small_experiment(dir.path);
  const auto agg = run_batch(cfg, ff1, ff2);
  write_outputs(agg, cfg);

  int csvs = 0, svgs = 0, summaries = 0;
  for (const auto& entry : fs::directory_iterator(dir.path)) {
    const auto ext = entry.path().extension();
    if (ext == ".csv") ++csvs;
    if (ext == ".svg") ++svgs;
    if (entry.path().filename() == "summary.txt") ++summaries;
  }
  CHECK(csvs == 3);
  CHECK(svgs == 2);
  CHECK(summaries == 1);

  const std::string csv = slurp(dir.path / "neither.csv");
  CHECK(csv.starts_with("iteration,mean_fitness,se_fitness,mean_diversity,se_diversity\n"));
  const std::string summary = slurp(dir.path / "summary.txt");
  CHECK(summary.find("[neither]") != std::string::npos);
  CHECK(summary.find("plateau_slope_last20 = ") != std::string::npos);
  CHECK(summary.find("recovery_iters_q90 = ") != std::string::npos);
  CHECK(summary.find("peak_diversity_iter = ") != std::string::npos);

  // Re-running into the same directory reproduces identical bytes.
  const std::string svg_before = slurp(dir.path / "mean_fitness.svg");
  write_outputs(run_batch(cfg, ff1, ff2), cfg);
  CHECK(slurp(dir.path / "mean_fitness.svg") == svg_before);
  CHECK(slurp(dir.path / "neither.csv") == csv);
}

TEST_CASE("plot regenerates charts from the CSV files alone") {
  const TemplateSet ff1 = load_data("ff1.tmpl");
  const TemplateSet ff2 = load_data("ff2.tmpl");
  TempDir dir("evoc_test_plot");
  const ExperimentConfig cfg = small_experiment(dir.path);
  write_outputs(run_batch(cfg, ff1, ff2), cfg);

  const std::string fitness_svg = slurp(dir.path / "mean_fitness.svg");
  const std::string diversity_svg = slurp(dir.path / "diversity.svg");
  fs::remove(dir.path / "mean_fitness.svg");
  fs::remove(dir.path / "diversity.svg");
  plot_directory(dir.path.string());
  CHECK(slurp(dir.path / "mean_fitness.svg") == fitness_svg);
  CHECK(slurp(dir.path / "diversity.svg") == diversity_svg);

  TempDir empty("evoc_test_plot_empty");
  CHECK_THROWS_AS(plot_directory(empty.path.string()), IoError);
}

TEST_CASE("a batch refuses template sets with identical ids") {
  const TemplateSet ff1 = load_data("ff1.tmpl");
  TempDir dir("evoc_test_same_id");
  const ExperimentConfig cfg = small_experiment(dir.path);
  CHECK_THROWS_WITH_AS(run_batch(cfg, ff1, ff1), doctest::Contains("distinct ids"), ConfigError);
}

TEST_CASE("experiment config validation") {
  ExperimentConfig cfg;
  cfg.runs = 0;
  cfg.conditions = {};
  cfg.ff2_path = cfg.ff1_path;
  const auto errors = cfg.validate();
  std::string joined;
  for (const auto& e : errors) joined += e + "\n";
  CHECK(joined.find("runs") != std::string::npos);
  CHECK(joined.find("conditions") != std::string::npos);
  CHECK(joined.find("different files") != std::string::npos);
}
