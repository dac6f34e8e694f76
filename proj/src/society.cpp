#include "society.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <set>

namespace evoc {

namespace {

// Stream purposes; part of the key so invention draws never shift
// imitation draws and vice versa.
enum StreamPurpose : std::uint64_t { kActivity = 1, kInvent = 2, kImitate = 3 };

RandomStream agent_stream(const Society& s, int iteration, int agent, StreamPurpose purpose) {
  return RandomStream::derive(s.config.seed,
                              {static_cast<std::uint64_t>(iteration),
                               static_cast<std::uint64_t>(agent), purpose});
}

std::vector<std::vector<int>> build_neighbors(int width, int height, Neighborhood nbhd) {
  static constexpr int moore[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1},
                                      {0, 1},   {1, -1}, {1, 0},  {1, 1}};
  static constexpr int von_neumann[4][2] = {{-1, 0}, {0, -1}, {0, 1}, {1, 0}};
  const std::span<const int[2]> offsets = nbhd == Neighborhood::Moore
                                              ? std::span<const int[2]>(moore)
                                              : std::span<const int[2]>(von_neumann);

  std::vector<std::vector<int>> out(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const int self = y * width + x;
      auto& list = out[self];
      for (const auto& off : offsets) {
        const int nx = ((x + off[1]) % width + width) % width;
        const int ny = ((y + off[0]) % height + height) % height;
        const int idx = ny * width + nx;
        // Small tori alias offsets onto the same cell (or back onto self).
        if (idx != self && std::find(list.begin(), list.end(), idx) == list.end()) {
          list.push_back(idx);
        }
      }
    }
  }
  return out;
}

void format_real(std::string& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  out += buf;
}

}  // namespace

RunRules SocietyConfig::rules() const {
  RunRules r;
  r.chaining_enabled = chaining_enabled;
  r.cf_enabled = cf_enabled;
  r.cf_params = cf_params;
  r.cf_policy = cf_policy;
  r.order_mode = order_mode;
  r.max_action_length = max_action_length;
  return r;
}

std::vector<std::string> SocietyConfig::validate() const {
  std::vector<std::string> errors;
  if (grid_width < 1) errors.push_back("grid_width must be >= 1");
  if (grid_height < 1) errors.push_back("grid_height must be >= 1");
  if (grid_width >= 1 && grid_height >= 1 && grid_width * grid_height < 2) {
    errors.push_back("grid must hold at least 2 agents");
  }
  if (invention_probability < 0.0 || invention_probability > 1.0) {
    errors.push_back("invention_probability must be in [0, 1]");
  }
  if (iterations < 1) errors.push_back("iterations must be >= 1");
  if (switch_iteration) {
    if (*switch_iteration < 1) errors.push_back("switch_iteration must be >= 1");
    if (*switch_iteration >= iterations) {
      errors.push_back("switch_iteration (" + std::to_string(*switch_iteration) +
                       ") must be < iterations (" + std::to_string(iterations) + ")");
    }
  }
  if (max_action_length < 1) errors.push_back("max_action_length must be >= 1");
  if (!(cf_params.a < 0.0)) errors.push_back("cf a must be negative");
  if (!(cf_params.b > 0.0 && cf_params.b < 1.0)) errors.push_back("cf b must be in (0, 1)");
  if (!(cf_params.rcc_min > 0.0 && cf_params.rcc_min <= 1.0 / 6.0)) {
    errors.push_back("cf rcc_min must be in (0, 1/6]");
  }
  if (!(cf_params.rcc_max >= 1.0 / 6.0 && cf_params.rcc_max <= 1.0)) {
    errors.push_back("cf rcc_max must be in [1/6, 1]");
  }
  return errors;
}

Society init_society(const SocietyConfig& config, const TemplateSet& ff1, const TemplateSet* ff2) {
  auto errors = config.validate();
  if (config.switch_iteration && ff2 == nullptr) {
    errors.push_back("switch configured but no second template set provided");
  }
  if (!errors.empty()) {
    std::string msg = "invalid society config:";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw ConfigError(msg);
  }

  Society s;
  s.config = config;
  s.ff1 = &ff1;
  s.ff2 = ff2;
  s.active = &ff1;
  s.neighbors = build_neighbors(config.grid_width, config.grid_height, config.neighborhood);

  const RunRules rules = config.rules();
  AgentState prototype;
  prototype.action = Action{{SubAction{}}};  // all body parts neutral
  prototype.fitness = action_fitness(prototype.action, ff1, rules.chaining_enabled, rules.order_mode);
  prototype.rcc =
      config.cf_enabled ? initial_rcc(prototype.fitness, config.cf_params) : 1.0 / 6.0;
  s.agents.assign(static_cast<std::size_t>(config.grid_width) * config.grid_height, prototype);
  return s;
}

Action imitate(const Society& society, int agent_index, RandomStream& rng) {
  const auto& neighbor_ids = society.neighbors[agent_index];
  std::vector<int> order(neighbor_ids.begin(), neighbor_ids.end());
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.next_below(static_cast<std::uint32_t>(i))]);
  }
  const int own_fitness = society.agents[agent_index].fitness;
  for (int n : order) {
    if (society.agents[n].fitness > own_fitness) return society.agents[n].action;
  }
  return society.agents[agent_index].action;
}

int diversity(const Society& society) {
  std::set<Action> distinct;
  for (const auto& agent : society.agents) distinct.insert(agent.action);
  return static_cast<int>(distinct.size());
}

namespace {

void apply_switch(Society& s) {
  s.active = s.ff2;
  const RunRules rules = s.config.rules();
  for (auto& agent : s.agents) {
    const int old_fitness = agent.fitness;
    agent.fitness = action_fitness(agent.action, *s.active, rules.chaining_enabled, rules.order_mode);
    if (!s.config.cf_enabled) continue;
    if (s.config.cf_policy == CfUpdatePolicy::Implemented) {
      // The re-evaluation is a real fitness change of the implemented
      // action; a drop widens the search, a rise narrows it.
      agent.previous_fitness = old_fitness;
      agent.rcc = update_rcc(agent.rcc, agent.fitness, old_fitness, s.config.cf_params);
    } else {
      // Candidate policy treats the switch as a fresh start.
      agent.previous_fitness.reset();
      agent.rcc = initial_rcc(agent.fitness, s.config.cf_params);
    }
  }
}

}  // namespace

void step(Society& society, std::span<const int> order, std::vector<AgentStepInfo>* info) {
  const int t = society.iteration + 1;
  const RunRules rules = society.config.rules();
  const Society& snapshot = society;  // candidates read pre-step state only

  std::vector<AgentState> next = society.agents;
  if (info) info->assign(society.agents.size(), {});

  const auto process = [&](int i) {
    RandomStream activity = agent_stream(snapshot, t, i, kActivity);
    const bool invents = activity.bernoulli(society.config.invention_probability);

    Action candidate;
    if (invents) {
      RandomStream rng = agent_stream(snapshot, t, i, kInvent);
      candidate = invent(snapshot.agents[i], *snapshot.active, rules, rng);
    } else {
      RandomStream rng = agent_stream(snapshot, t, i, kImitate);
      candidate = imitate(snapshot, i, rng);
    }

    AgentState updated = snapshot.agents[i];
    const bool adopted = evaluate_and_adopt(updated, candidate, *snapshot.active, rules);
    next[i] = std::move(updated);
    if (info) (*info)[i] = {invents, adopted};
  };

  if (order.empty()) {
    for (int i = 0; i < society.population(); ++i) process(i);
  } else {
    for (int i : order) process(i);
  }

  society.agents = std::move(next);
  society.iteration = t;
  if (society.config.switch_iteration && t == *society.config.switch_iteration) {
    apply_switch(society);
  }
}

namespace {

void record_metrics(const Society& s, RunMetrics& m) {
  double fitness_sum = 0;
  double rcc_sum = 0;
  double length_sum = 0;
  for (const auto& agent : s.agents) {
    fitness_sum += agent.fitness;
    rcc_sum += agent.rcc;
    length_sum += agent.action.length();
  }
  const double n = static_cast<double>(s.population());
  m.mean_fitness.push_back(fitness_sum / n);
  m.diversity.push_back(diversity(s));
  m.mean_rcc.push_back(rcc_sum / n);
  m.mean_action_length.push_back(length_sum / n);
}

}  // namespace

RunResult run(const SocietyConfig& config, const TemplateSet& ff1, const TemplateSet* ff2,
              std::ostream* trace, int run_index) {
  RunResult result;
  result.society = init_society(config, ff1, ff2);
  Society& s = result.society;

  record_metrics(s, result.metrics);
  if (trace) *trace << kTraceHeader;

  std::vector<AgentStepInfo> info;
  for (int t = 1; t <= config.iterations; ++t) {
    step(s, {}, trace ? &info : nullptr);
    record_metrics(s, result.metrics);
    if (trace) {
      std::string block;
      for (int i = 0; i < s.population(); ++i) {
        block += std::to_string(run_index);
        block += ',';
        block += std::to_string(t);
        block += ',';
        block += std::to_string(i);
        block += ',';
        block += std::to_string(s.agents[i].fitness);
        block += ',';
        block += std::to_string(s.agents[i].action.length());
        block += ',';
        format_real(block, s.agents[i].rcc);
        block += ',';
        block += info[i].adopted ? '1' : '0';
        block += ',';
        block += info[i].invented ? "invent" : "imitate";
        block += '\n';
      }
      *trace << block;
    }
  }
  return result;
}

void write_metrics_csv(const RunMetrics& metrics, std::ostream& out) {
  out << "iteration,mean_fitness,diversity,mean_rcc,mean_action_length\n";
  for (int t = 0; t < metrics.rows(); ++t) {
    std::string row = std::to_string(t);
    row += ',';
    format_real(row, metrics.mean_fitness[t]);
    row += ',';
    row += std::to_string(metrics.diversity[t]);
    row += ',';
    format_real(row, metrics.mean_rcc[t]);
    row += ',';
    format_real(row, metrics.mean_action_length[t]);
    row += '\n';
    out << row;
  }
}

void write_action_dump(const Society& society, std::ostream& out) {
  for (int i = 0; i < society.population(); ++i) {
    out << i << ": " << serialize_action(society.agents[i].action) << '\n';
  }
}

}  // namespace evoc
