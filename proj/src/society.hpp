#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "agent.hpp"
#include "domain.hpp"

namespace evoc {

enum class Neighborhood { Moore, VonNeumann };

struct SocietyConfig {
  int grid_width = 10;
  int grid_height = 10;
  Neighborhood neighborhood = Neighborhood::Moore;
  double invention_probability = 0.5;
  int iterations = 100;
  std::optional<int> switch_iteration = 50;
  bool chaining_enabled = false;
  bool cf_enabled = false;
  CfParams cf_params;
  CfUpdatePolicy cf_policy = CfUpdatePolicy::Implemented;
  OrderMode order_mode = OrderMode::Count;
  int max_action_length = 100;
  std::uint64_t seed = 12345;

  RunRules rules() const;
  std::vector<std::string> validate() const;  // empty when valid
};

// Agents on a toroidal grid, row-major. The active template set switches
// from ff1 to ff2 when the iteration counter reaches switch_iteration.
struct Society {
  SocietyConfig config;
  std::vector<AgentState> agents;
  std::vector<std::vector<int>> neighbors;  // per agent, torus-deduped, self excluded
  const TemplateSet* ff1 = nullptr;
  const TemplateSet* ff2 = nullptr;
  const TemplateSet* active = nullptr;
  int iteration = 0;

  int population() const { return static_cast<int>(agents.size()); }
};

// Throws ConfigError listing every violation. ff2 may be null only when no
// switch is configured. All agents start immobile on the all-neutral action.
Society init_society(const SocietyConfig& config, const TemplateSet& ff1,
                     const TemplateSet* ff2 = nullptr);

// Lazy imitation: scans the agent's neighbors in a uniformly random order
// and returns the first action strictly fitter than the agent's own; the
// agent's current action if none is.
Action imitate(const Society& society, int agent_index, RandomStream& rng);

// Count of distinct actions across all agents (full sequence equality).
int diversity(const Society& society);

struct AgentStepInfo {
  bool invented = false;
  bool adopted = false;
};

// One synchronous iteration: every agent independently invents (with the
// configured probability) or imitates, with all candidates generated from
// the pre-step snapshot; adoptions then apply per agent. Processing order
// is irrelevant because every agent draws from its own (seed, iteration,
// agent, purpose) random stream; `order` exists so tests can prove it.
void step(Society& society, std::span<const int> order = {},
          std::vector<AgentStepInfo>* info = nullptr);

struct RunMetrics {
  // Row t describes the society after iteration t; row 0 is the initial
  // state, so each series has iterations + 1 entries.
  std::vector<double> mean_fitness;
  std::vector<int> diversity;
  std::vector<double> mean_rcc;
  std::vector<double> mean_action_length;

  int rows() const { return static_cast<int>(mean_fitness.size()); }
};

struct RunResult {
  RunMetrics metrics;
  Society society;  // final state, for action dumps
};

// Executes a full run. Fully deterministic in (config, template sets).
// `trace` receives one CSV row per agent per iteration when non-null.
RunResult run(const SocietyConfig& config, const TemplateSet& ff1, const TemplateSet* ff2,
              std::ostream* trace = nullptr, int run_index = 0);

// "iteration,mean_fitness,diversity,mean_rcc,mean_action_length", reals
// with 6 decimals.
void write_metrics_csv(const RunMetrics& metrics, std::ostream& out);

// One agent per line: "<agent_id>: <compact>[;<compact>]*".
void write_action_dump(const Society& society, std::ostream& out);

inline constexpr const char* kTraceHeader =
    "run,iteration,agent_id,fitness,action_length,rcc,adopted,mode\n";

}  // namespace evoc
