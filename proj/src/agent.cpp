#include "agent.hpp"

#include <algorithm>
#include <cmath>

namespace evoc {

namespace {

constexpr int kHead = static_cast<int>(BodyPart::Head);
constexpr int kLeftArm = static_cast<int>(BodyPart::LeftArm);
constexpr int kRightArm = static_cast<int>(BodyPart::RightArm);
constexpr int kLeftLeg = static_cast<int>(BodyPart::LeftLeg);
constexpr int kRightLeg = static_cast<int>(BodyPart::RightLeg);
constexpr int kHips = static_cast<int>(BodyPart::Hips);

// Paired limb for the symmetry/opposite rules; -1 for head and hips.
constexpr int partner_of(int j) {
  switch (j) {
    case kLeftArm: return kRightArm;
    case kRightArm: return kLeftArm;
    case kLeftLeg: return kRightLeg;
    case kRightLeg: return kLeftLeg;
    default: return -1;
  }
}

double group_movement(const SubAction& d, int a, int b) {
  return ((d.components[a] != 0 ? 1 : 0) + (d.components[b] != 0 ? 1 : 0)) / 2.0;
}

}  // namespace

HiddenActivations compute_hidden_activations(const SubAction& d) {
  HiddenActivations h;
  int moving = 0;
  for (int j = 0; j < kBodyParts; ++j) {
    if (d.components[j] != 0) ++moving;
  }
  h.movement = moving / 6.0;

  const auto pair_state = [&](int a, int b, int& same, int& negated) {
    if (d.components[a] == 0 || d.components[b] == 0) return;
    if (d.components[a] == d.components[b]) ++same;
    if (d.components[a] == -d.components[b]) ++negated;
  };
  int same = 0, negated = 0;
  pair_state(kLeftArm, kRightArm, same, negated);
  pair_state(kLeftLeg, kRightLeg, same, negated);
  h.symmetry = same / 2.0;
  h.opposite = negated / 2.0;

  h.left = group_movement(d, kLeftArm, kLeftLeg);
  h.right = group_movement(d, kRightArm, kRightLeg);
  h.arm = group_movement(d, kLeftArm, kRightArm);
  h.leg = group_movement(d, kLeftLeg, kRightLeg);
  return h;
}

void FeatureTrend::observe(bool present, double fitness_value) {
  if (present) {
    present_sum += fitness_value;
    ++present_count;
  } else {
    absent_sum += fitness_value;
    ++absent_count;
  }
}

double FeatureTrend::bias() const {
  if (present_count == 0 || absent_count == 0) return 0.0;
  const double mean_present = present_sum / present_count;
  const double mean_absent = absent_sum / absent_count;
  return (mean_present - mean_absent) /
         (std::abs(mean_present) + std::abs(mean_absent) + 1.0);
}

void TrendStats::observe(const HiddenActivations& h, double fitness_value) {
  movement.observe(h.movement > 0.5, fitness_value);
  symmetry.observe(h.symmetry > 0.5, fitness_value);
}

double initial_rcc(int f_current, const CfParams& params) {
  return std::clamp(std::pow(params.b, static_cast<double>(f_current)), params.rcc_min,
                    params.rcc_max);
}

double update_rcc(double rcc, int f_new, int f_old, const CfParams& params) {
  return std::clamp(rcc + params.a * static_cast<double>(f_new - f_old), params.rcc_min,
                    params.rcc_max);
}

SubAction mutate_sub_action(const SubAction& base, double rcc, const TrendStats& trend,
                            RandomStream& rng) {
  const double movement_bias = trend.movement.bias();
  const double symmetry_bias = trend.symmetry.bias();

  SubAction out = base;
  for (int j = 0; j < kBodyParts; ++j) {
    if (!rng.bernoulli(rcc)) continue;

    // The two values != current, ascending.
    Position alt[2];
    int n = 0;
    for (Position v : {Position{-1}, Position{0}, Position{1}}) {
      if (v != base.components[j]) alt[n++] = v;
    }

    const int partner = partner_of(j);
    const auto preference = [&](Position v) {
      double s = movement_bias * (v != 0 ? 1.0 : 0.0);
      if (partner >= 0 && v == base.components[partner]) s += symmetry_bias;
      return s;
    };
    const double beta = std::clamp(preference(alt[0]) - preference(alt[1]), -0.9, 0.9);
    out.components[j] = rng.bernoulli((1.0 + beta) / 2.0) ? alt[0] : alt[1];
  }
  return out;
}

Action invent(const AgentState& agent, const TemplateSet& ts, const RunRules& rules,
              RandomStream& rng) {
  const SubAction& base = agent.action.last();
  SubAction mutant = mutate_sub_action(base, agent.rcc, agent.trend, rng);

  if (!rules.chaining_enabled) return Action{{mutant}};

  Action candidate = agent.action;
  if (!is_novel(mutant, base) || !successful(mutant, ts) ||
      candidate.length() >= rules.max_action_length) {
    // Nothing to chain: mutate the last sub-action in place instead.
    candidate.seq.back() = mutant;
    return candidate;
  }
  // Keep adding sub-actions while the newest one is both novel (differs
  // from its predecessor) and successful (matches some template); the
  // first failing mutant ends the chain-extension burst.
  while (candidate.length() < rules.max_action_length &&
         is_novel(mutant, candidate.last()) && successful(mutant, ts)) {
    candidate.seq.push_back(mutant);
    mutant = mutate_sub_action(candidate.last(), agent.rcc, agent.trend, rng);
  }
  return candidate;
}

bool evaluate_and_adopt(AgentState& agent, const Action& candidate, const TemplateSet& ts,
                        const RunRules& rules) {
  const int f_old = agent.fitness;
  const int f_candidate = action_fitness(candidate, ts, rules.chaining_enabled, rules.order_mode);

  // Knowledge comes from every evaluation, not only adopted ones.
  agent.trend.observe(compute_hidden_activations(candidate.last()), f_candidate);

  const bool adopted = f_candidate > f_old;
  if (adopted) {
    agent.previous_fitness = f_old;
    agent.action = candidate;
    agent.fitness = f_candidate;
  }

  if (rules.cf_enabled &&
      (rules.cf_policy == CfUpdatePolicy::Candidate || adopted)) {
    agent.rcc = update_rcc(agent.rcc, f_candidate, f_old, rules.cf_params);
  }
  return adopted;
}

}  // namespace evoc
