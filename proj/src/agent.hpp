#pragma once

#include <optional>

#include "domain.hpp"
#include "fitness.hpp"
#include "rng.hpp"

namespace evoc {

// Activations of the hidden concept nodes for one sub-action, each in [0,1].
// MOVEMENT fires on any non-neutral component; SYMMETRY on same-direction
// limb pairs; OPPOSITE on counter-direction limb pairs. LEFT/RIGHT/ARM/LEG
// are per-group movement fractions, computed but not used by invention.
struct HiddenActivations {
  double movement = 0;
  double symmetry = 0;
  double opposite = 0;
  double left = 0;
  double right = 0;
  double arm = 0;
  double leg = 0;
};

HiddenActivations compute_hidden_activations(const SubAction& d);

// Running means of fitness conditioned on a feature being active
// (activation > 0.5) vs inactive. The bias is a bounded normalized
// difference of the two means, 0 until both sides have evidence.
struct FeatureTrend {
  double present_sum = 0;
  long present_count = 0;
  double absent_sum = 0;
  long absent_count = 0;

  void observe(bool present, double fitness_value);
  double bias() const;  // in (-1, 1)
};

struct TrendStats {
  FeatureTrend movement;
  FeatureTrend symmetry;

  void observe(const HiddenActivations& h, double fitness_value);
};

// Contextual-focus parameters: rcc' = clamp(rcc + a * (f_new - f_old)),
// initial rcc = clamp(b ^ f_current). The floor defaults to the baseline
// rate 1/6 (one component per invention), the convergent anchor the search
// relaxes back to once fitness stops changing.
struct CfParams {
  double a = -0.005;
  double b = 0.8;
  double rcc_min = 1.0 / 6.0;
  double rcc_max = 1.0;
};

// When contextual focus reacts to fitness: Implemented updates the RCC
// only when the agent's implemented fitness actually changes (adoption or
// fitness-function switch); Candidate updates it on every evaluation using
// the candidate's fitness, adopted or not.
enum class CfUpdatePolicy { Implemented, Candidate };

// Per-run knobs shared by every agent in a society.
struct RunRules {
  bool chaining_enabled = false;
  bool cf_enabled = false;
  CfParams cf_params;
  CfUpdatePolicy cf_policy = CfUpdatePolicy::Implemented;
  OrderMode order_mode = OrderMode::Count;
  int max_action_length = 100;
};

struct AgentState {
  Action action;
  int fitness = 0;
  std::optional<int> previous_fitness;
  double rcc = 1.0 / 6.0;
  TrendStats trend;
};

double initial_rcc(int f_current, const CfParams& params);
double update_rcc(double rcc, int f_new, int f_old, const CfParams& params);

// One invention attempt from base: each component changes with probability
// rcc; a changed component draws its new value from the two remaining ones
// with probabilities (1 +- beta)/2, where beta combines the movement trend
// (toward non-neutral values) and, for limb components, the symmetry trend
// (toward the paired limb's current value). beta is clamped to [-0.9, 0.9]
// so no value ever becomes unreachable.
SubAction mutate_sub_action(const SubAction& base, double rcc, const TrendStats& trend,
                            RandomStream& rng);

// Without chaining the candidate is a one-sub-action mutation of the
// current action. With chaining, mutants are generated from the last
// sub-action and appended for as long as each is both novel and successful
// (and the length cap allows); when the very first mutant fails that test
// it replaces the last sub-action in place. Exactly one candidate is
// returned either way; adoption is decided separately.
Action invent(const AgentState& agent, const TemplateSet& ts, const RunRules& rules,
              RandomStream& rng);

// Evaluates the candidate, adopts it on strict fitness improvement, feeds
// the evaluation into the trend statistics either way, and applies the
// configured contextual-focus update. Returns whether it was adopted.
bool evaluate_and_adopt(AgentState& agent, const Action& candidate, const TemplateSet& ts,
                        const RunRules& rules);

}  // namespace evoc
