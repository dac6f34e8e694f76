#include "experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "chart.hpp"

namespace evoc {

const char* condition_name(Condition c) {
  switch (c) {
    case Condition::Neither: return "neither";
    case Condition::ChainingOnly: return "chaining_only";
    case Condition::CfOnly: return "cf_only";
    case Condition::ChainingAndCf: return "chaining_and_cf";
  }
  return "?";
}

const char* condition_label(Condition c) {
  switch (c) {
    case Condition::Neither: return "neither";
    case Condition::ChainingOnly: return "chaining only";
    case Condition::CfOnly: return "CF only";
    case Condition::ChainingAndCf: return "chaining + CF";
  }
  return "?";
}

std::optional<Condition> condition_from_name(std::string_view name) {
  for (Condition c : {Condition::Neither, Condition::ChainingOnly, Condition::CfOnly,
                      Condition::ChainingAndCf}) {
    if (name == condition_name(c)) return c;
  }
  return std::nullopt;
}

void apply_condition(SocietyConfig& config, Condition c) {
  config.chaining_enabled = c == Condition::ChainingOnly || c == Condition::ChainingAndCf;
  config.cf_enabled = c == Condition::CfOnly || c == Condition::ChainingAndCf;
}

std::vector<std::string> ExperimentConfig::validate() const {
  std::vector<std::string> errors = base.validate();
  if (runs < 1) errors.push_back("runs must be >= 1");
  if (conditions.empty()) errors.push_back("conditions must be non-empty");
  if (workers < 1) errors.push_back("workers must be >= 1");
  if (ff1_path == ff2_path) errors.push_back("ff1 and ff2 must be different files");
  std::vector<Condition> sorted = conditions;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    errors.push_back("duplicate condition");
  }
  return errors;
}

std::uint64_t derive_run_seed(std::uint64_t base_seed, Condition c, int run_index) {
  return RandomStream::derive_key(base_seed, {static_cast<std::uint64_t>(c),
                                              static_cast<std::uint64_t>(run_index)});
}

const ConditionAggregate* AggregateMetrics::find(Condition c) const {
  for (const auto& agg : per_condition) {
    if (agg.condition == c) return &agg;
  }
  return nullptr;
}

namespace {

// Compensated (Kahan) accumulator; aggregation also runs in fixed run
// order, so results are independent of worker count and nearly independent
// of run permutation.
struct KahanSum {
  double sum = 0;
  double carry = 0;

  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

void aggregate_series(const std::vector<std::vector<double>>& per_run, std::vector<double>& mean,
                      std::vector<double>& se) {
  const std::size_t rows = per_run.empty() ? 0 : per_run.front().size();
  const double n = static_cast<double>(per_run.size());
  mean.resize(rows);
  se.resize(rows);
  for (std::size_t t = 0; t < rows; ++t) {
    KahanSum s;
    for (const auto& series : per_run) s.add(series[t]);
    mean[t] = s.sum / n;
    if (per_run.size() < 2) {
      se[t] = 0.0;
      continue;
    }
    KahanSum sq;
    for (const auto& series : per_run) {
      const double d = series[t] - mean[t];
      sq.add(d * d);
    }
    se[t] = std::sqrt(sq.sum / (n - 1.0) / n);
  }
}

void for_each_index(int count, int workers, const std::function<void(int)>& body) {
  if (workers <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  const int n_threads = std::min(workers, count);
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) {
    pool.emplace_back([&, t] {
      for (int i = t; i < count; i += n_threads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

AggregateMetrics run_batch(const ExperimentConfig& config, const TemplateSet& ff1,
                           const TemplateSet& ff2) {
  auto errors = config.validate();
  if (ff1.id == ff2.id) {
    errors.push_back("template sets must have distinct ids (both are \"" + ff1.id + "\")");
  }
  if (!errors.empty()) {
    std::string msg = "invalid experiment config:";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw ConfigError(msg);
  }

  AggregateMetrics agg;
  for (Condition c : config.conditions) {
    SocietyConfig run_config = config.base;
    apply_condition(run_config, c);

    std::vector<RunMetrics> results(config.runs);
    for_each_index(config.runs, config.workers, [&](int r) {
      SocietyConfig one = run_config;
      one.seed = derive_run_seed(config.base_seed, c, r);
      results[r] = run(one, ff1, config.base.switch_iteration ? &ff2 : nullptr, nullptr, r).metrics;
    });

    std::vector<std::vector<double>> fitness(config.runs), diversity_series(config.runs);
    for (int r = 0; r < config.runs; ++r) {
      fitness[r] = results[r].mean_fitness;
      diversity_series[r].assign(results[r].diversity.begin(), results[r].diversity.end());
    }

    ConditionAggregate out;
    out.condition = c;
    out.runs = config.runs;
    aggregate_series(fitness, out.mean_fitness, out.se_fitness);
    aggregate_series(diversity_series, out.mean_diversity, out.se_diversity);
    agg.per_condition.push_back(std::move(out));
  }
  return agg;
}

double least_squares_slope(std::span<const double> series, int from, int to) {
  from = std::max(from, 0);
  to = std::min(to, static_cast<int>(series.size()) - 1);
  const int n = to - from + 1;
  if (n < 2) return 0.0;
  double mean_x = 0, mean_y = 0;
  for (int i = from; i <= to; ++i) {
    mean_x += i;
    mean_y += series[i];
  }
  mean_x /= n;
  mean_y /= n;
  double num = 0, den = 0;
  for (int i = from; i <= to; ++i) {
    num += (i - mean_x) * (series[i] - mean_y);
    den += (i - mean_x) * (i - mean_x);
  }
  return num / den;
}

std::optional<int> recovery_statistic(const ConditionAggregate& agg, int switch_iteration,
                                      double q) {
  const auto& f = agg.mean_fitness;
  if (switch_iteration < 1 || switch_iteration >= static_cast<int>(f.size())) return std::nullopt;
  const double target = q * f[switch_iteration - 1];
  for (int k = 0; switch_iteration + k < static_cast<int>(f.size()); ++k) {
    if (f[switch_iteration + k] >= target) return k;
  }
  return std::nullopt;
}

namespace {

std::string real6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

struct SeriesStyle {
  const char* color;
  const char* dash;
};

SeriesStyle condition_style(Condition c) {
  switch (c) {
    case Condition::Neither: return {"#2ca02c", "2,3"};
    case Condition::ChainingOnly: return {"#1f77b4", "7,4"};
    case Condition::CfOnly: return {"#ff7f0e", "1,0"};
    case Condition::ChainingAndCf: return {"#d62728", ""};
  }
  return {"#000000", ""};
}

void write_svg(const std::filesystem::path& path, const std::string& title,
               const std::string& y_label,
               const std::vector<std::pair<Condition, std::vector<double>>>& data) {
  std::vector<ChartSeries> series;
  for (const auto& [c, y] : data) {
    const auto style = condition_style(c);
    series.push_back({condition_label(c), style.color, style.dash, y});
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write chart: " + path.string());
  write_line_chart(out, title, "iteration", y_label, series);
}

void write_summary(const std::filesystem::path& path, const AggregateMetrics& agg,
                   const ExperimentConfig& config) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write summary: " + path.string());
  for (const auto& cond : agg.per_condition) {
    const int last = static_cast<int>(cond.mean_fitness.size()) - 1;
    const double slope = least_squares_slope(cond.mean_fitness, last - 20, last);
    out << '[' << condition_name(cond.condition) << "]\n";
    out << "runs = " << cond.runs << '\n';
    out << "plateau_slope_last20 = " << real6(slope) << '\n';
    out << "recovery_iters_q90 = ";
    if (config.base.switch_iteration) {
      const auto k = recovery_statistic(cond, *config.base.switch_iteration, 0.9);
      if (k) {
        out << *k << '\n';
      } else {
        out << "none\n";
      }
    } else {
      out << "n/a\n";
    }
    const auto peak = std::max_element(cond.mean_diversity.begin(), cond.mean_diversity.end());
    out << "peak_diversity_iter = " << (peak - cond.mean_diversity.begin()) << '\n';
    out << '\n';
  }
}

}  // namespace

void write_outputs(const AggregateMetrics& agg, const ExperimentConfig& config) {
  namespace fs = std::filesystem;
  const fs::path dir(config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  for (const auto& cond : agg.per_condition) {
    const fs::path path = dir / (std::string(condition_name(cond.condition)) + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << "iteration,mean_fitness,se_fitness,mean_diversity,se_diversity\n";
    for (std::size_t t = 0; t < cond.mean_fitness.size(); ++t) {
      out << t << ',' << real6(cond.mean_fitness[t]) << ',' << real6(cond.se_fitness[t]) << ','
          << real6(cond.mean_diversity[t]) << ',' << real6(cond.se_diversity[t]) << '\n';
    }
  }

  std::vector<std::pair<Condition, std::vector<double>>> fitness_data, diversity_data;
  for (const auto& cond : agg.per_condition) {
    fitness_data.emplace_back(cond.condition, cond.mean_fitness);
    diversity_data.emplace_back(cond.condition, cond.mean_diversity);
  }
  write_svg(dir / "mean_fitness.svg", "Mean fitness of actions across the society",
            "mean fitness", fitness_data);
  write_svg(dir / "diversity.svg", "Diversity of actions across the society",
            "distinct actions", diversity_data);
  write_summary(dir / "summary.txt", agg, config);
}

void plot_directory(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<std::pair<Condition, std::vector<double>>> fitness_data, diversity_data;
  for (Condition c : {Condition::Neither, Condition::ChainingOnly, Condition::CfOnly,
                      Condition::ChainingAndCf}) {
    const fs::path path = fs::path(dir) / (std::string(condition_name(c)) + ".csv");
    std::ifstream in(path);
    if (!in) continue;
    std::string line;
    if (!std::getline(in, line)) continue;  // header
    std::vector<double> fitness, diversity_series;
    int line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      std::istringstream row(line);
      std::string field;
      std::vector<std::string> fields;
      while (std::getline(row, field, ',')) fields.push_back(field);
      if (fields.size() != 5) {
        throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected 5 columns");
      }
      fitness.push_back(std::stod(fields[1]));
      diversity_series.push_back(std::stod(fields[3]));
    }
    fitness_data.emplace_back(c, std::move(fitness));
    diversity_data.emplace_back(c, std::move(diversity_series));
  }
  if (fitness_data.empty()) {
    throw IoError("no per-condition CSV files found in " + dir);
  }
  write_svg(fs::path(dir) / "mean_fitness.svg", "Mean fitness of actions across the society",
            "mean fitness", fitness_data);
  write_svg(fs::path(dir) / "diversity.svg", "Diversity of actions across the society",
            "distinct actions", diversity_data);
}

}  // namespace evoc
