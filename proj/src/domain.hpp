#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace evoc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

// Body parts in canonical component order: HD, LA, RA, LL, RL, HP.
enum class BodyPart { Head = 0, LeftArm, RightArm, LeftLeg, RightLeg, Hips };

inline constexpr int kBodyParts = 6;
inline constexpr std::array<const char*, kBodyParts> kBodyPartNames = {
    "HD", "LA", "RA", "LL", "RL", "HP"};

// -1 down, 0 neutral, +1 up.
using Position = std::int8_t;

// Position of all six body parts; the atomic unit agents invent and imitate.
struct SubAction {
  std::array<Position, kBodyParts> components{};

  Position at(BodyPart p) const { return components[static_cast<int>(p)]; }
  auto operator<=>(const SubAction&) const = default;
};

// Non-empty sequence of sub-actions. Multi-step actions only arise with
// chaining enabled; consecutive sub-actions then differ in >= 1 component.
struct Action {
  std::vector<SubAction> seq;

  int length() const { return static_cast<int>(seq.size()); }
  const SubAction& last() const { return seq.back(); }
  auto operator<=>(const Action&) const = default;
};

// Template slot: a position value or unspecified (wildcard).
using Slot = std::int8_t;
inline constexpr Slot kUnspecified = 2;

struct Template {
  std::array<Slot, kBodyParts> slots{};

  bool specified(int j) const { return slots[j] != kUnspecified; }
  auto operator<=>(const Template&) const = default;
};

struct TemplateSet {
  std::string id;
  std::vector<Template> templates;

  int size() const { return static_cast<int>(templates.size()); }
};

// Compact text form: six tokens from {0, 1, -1} (templates also allow *),
// concatenated without separators, e.g. "01-110-1".
SubAction parse_sub_action(std::string_view text);
std::string serialize_sub_action(const SubAction& d);
Template parse_template(std::string_view text);
std::string serialize_template(const Template& t);

// Sub-actions joined with ';', e.g. "01001-1;-10-1-111".
std::string serialize_action(const Action& a);

// Template-set file: '#' starts a comment, first payload line is
// "id: <name>", every further payload line is one compact template.
TemplateSet load_template_set(std::istream& in, const std::string& source_name);
TemplateSet load_template_set_file(const std::string& path);

// All 729 sub-actions, ordered by component odometer (last component
// fastest), i.e. by sub_action_index.
const std::vector<SubAction>& all_sub_actions();
int sub_action_index(const SubAction& d);

inline constexpr int kSubActionCount = 729;  // 3^6

}  // namespace evoc
