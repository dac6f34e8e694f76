#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "domain.hpp"

namespace evoc {

// Template order: Count is the number of specified slots; SignedSum is the
// literal sum of the specified slot values (kept as a sensitivity switch,
// it can be negative for templates with -1 slots).
enum class OrderMode { Count, SignedSum };

// 1 iff every specified slot of t equals the corresponding component of d.
int template_weight(const Template& t, const SubAction& d);

int template_order(const Template& t, OrderMode mode = OrderMode::Count);

// Sum over the whole set of weight(t, d) * order(t).
int sub_action_fitness(const SubAction& d, const TemplateSet& ts, OrderMode mode = OrderMode::Count);

// True iff at least one template matches d, regardless of order.
bool successful(const SubAction& d, const TemplateSet& ts);

// True iff d differs from previous in at least one component.
bool is_novel(const SubAction& d, const SubAction& previous);

// Chaining on: fitness of the last sub-action plus the sequence length.
// Chaining off: plain sub-action fitness of the single sub-action; a
// multi-sub-action input is a contract violation.
int action_fitness(const Action& a, const TemplateSet& ts, bool chaining_enabled,
                   OrderMode mode = OrderMode::Count);

// Brute-force materialization of the fitness function over all 729
// sub-actions. Used by the oracle CLI command and by validation; the
// simulation always computes fitness on demand.
struct LandscapeTable {
  std::vector<int> fitness;       // indexed by sub_action_index, size 729
  std::vector<SubAction> argmax;  // every maximizer, in index order
  int max = 0;
};

LandscapeTable enumerate_landscape(const TemplateSet& ts, OrderMode mode = OrderMode::Count);

// CSV "sub_action,fitness,is_optimal", rows sorted by compact string.
void write_landscape_csv(const LandscapeTable& table, std::ostream& out);

// Constraints file, one directive per line ('#' comments):
//   fitness <sub_action> <expected>        hard equality check
//   soft_fitness <sub_action> <claimed>    observed value reported, never fails
//   argmax <sub_action>[,<sub_action>...]  hard exact-argmax-set check
//   plateaus_min <k>                       hard: >= k distinct positive fitness
//                                          values strictly below the maximum
struct Constraints {
  struct FitnessCheck {
    SubAction d;
    int expected = 0;
    bool hard = true;
  };
  std::vector<FitnessCheck> fitness_checks;
  std::optional<std::vector<SubAction>> argmax;  // sorted by index
  std::optional<int> plateaus_min;
};

Constraints load_constraints(std::istream& in, const std::string& source_name);
Constraints load_constraints_file(const std::string& path);

struct ValidationReport {
  struct Check {
    std::string label;
    bool hard = true;
    bool pass = true;
    std::string detail;
  };
  std::vector<Check> checks;
  bool all_hard_passed = true;

  std::string to_string() const;
};

ValidationReport validate_template_set(const TemplateSet& ts, const Constraints& cs,
                                       OrderMode mode = OrderMode::Count);

}  // namespace evoc
