#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "society.hpp"

namespace evoc {

// Ordinals are part of the seed-derivation path and never change, so a
// condition's runs are identical no matter which other conditions are
// enabled alongside it.
enum class Condition { Neither = 0, ChainingOnly = 1, CfOnly = 2, ChainingAndCf = 3 };

const char* condition_name(Condition c);           // "neither", "chaining_only", ...
const char* condition_label(Condition c);          // legend text
std::optional<Condition> condition_from_name(std::string_view name);
void apply_condition(SocietyConfig& config, Condition c);

struct ExperimentConfig {
  SocietyConfig base;
  int runs = 500;
  std::vector<Condition> conditions = {Condition::Neither, Condition::ChainingOnly,
                                       Condition::CfOnly, Condition::ChainingAndCf};
  std::string ff1_path = "data/ff1.tmpl";
  std::string ff2_path = "data/ff2.tmpl";
  std::string output_dir = "out";
  std::uint64_t base_seed = 12345;
  int workers = 1;

  std::vector<std::string> validate() const;
};

std::uint64_t derive_run_seed(std::uint64_t base_seed, Condition c, int run_index);

struct ConditionAggregate {
  Condition condition{};
  int runs = 0;
  // Indexed by iteration (row 0 = initial state), means across runs with
  // standard errors.
  std::vector<double> mean_fitness;
  std::vector<double> se_fitness;
  std::vector<double> mean_diversity;
  std::vector<double> se_diversity;
};

struct AggregateMetrics {
  std::vector<ConditionAggregate> per_condition;  // in config order

  const ConditionAggregate* find(Condition c) const;
};

// Executes runs x conditions, aggregating in fixed run order afterwards;
// byte-identical output for any worker count.
AggregateMetrics run_batch(const ExperimentConfig& config, const TemplateSet& ff1,
                           const TemplateSet& ff2);

// Least-squares slope of series[from..to] against the iteration index.
double least_squares_slope(std::span<const double> series, int from, int to);

// Smallest k with mean_fitness[switch + k] >= q * mean_fitness[switch - 1];
// nullopt when the curve never gets back.
std::optional<int> recovery_statistic(const ConditionAggregate& agg, int switch_iteration,
                                      double q);

// Writes <condition>.csv per condition, mean_fitness.svg, diversity.svg and
// summary.txt into config.output_dir. Reruns produce identical bytes.
void write_outputs(const AggregateMetrics& agg, const ExperimentConfig& config);

// Rebuilds the two SVGs from previously written per-condition CSVs.
void plot_directory(const std::string& dir);

}  // namespace evoc
