#include "fitness.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace evoc {

int template_weight(const Template& t, const SubAction& d) {
  for (int j = 0; j < kBodyParts; ++j) {
    if (t.specified(j) && t.slots[j] != d.components[j]) return 0;
  }
  return 1;
}

int template_order(const Template& t, OrderMode mode) {
  int order = 0;
  for (int j = 0; j < kBodyParts; ++j) {
    if (!t.specified(j)) continue;
    order += mode == OrderMode::Count ? 1 : t.slots[j];
  }
  return order;
}

int sub_action_fitness(const SubAction& d, const TemplateSet& ts, OrderMode mode) {
  int total = 0;
  for (const Template& t : ts.templates) {
    total += template_weight(t, d) * template_order(t, mode);
  }
  return total;
}

bool successful(const SubAction& d, const TemplateSet& ts) {
  for (const Template& t : ts.templates) {
    if (template_weight(t, d) == 1) return true;
  }
  return false;
}

bool is_novel(const SubAction& d, const SubAction& previous) { return d != previous; }

int action_fitness(const Action& a, const TemplateSet& ts, bool chaining_enabled, OrderMode mode) {
  if (a.seq.empty()) throw Error("action_fitness: empty action");
  if (!chaining_enabled) {
    if (a.length() != 1) {
      throw Error("action_fitness: multi-sub-action input with chaining disabled (length " +
                  std::to_string(a.length()) + ")");
    }
    return sub_action_fitness(a.seq.front(), ts, mode);
  }
  return sub_action_fitness(a.last(), ts, mode) + a.length();
}

LandscapeTable enumerate_landscape(const TemplateSet& ts, OrderMode mode) {
  LandscapeTable table;
  const auto& space = all_sub_actions();
  table.fitness.resize(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    table.fitness[i] = sub_action_fitness(space[i], ts, mode);
  }
  table.max = *std::max_element(table.fitness.begin(), table.fitness.end());
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (table.fitness[i] == table.max) table.argmax.push_back(space[i]);
  }
  return table;
}

void write_landscape_csv(const LandscapeTable& table, std::ostream& out) {
  std::map<std::string, int> rows;  // compact string -> space index
  const auto& space = all_sub_actions();
  for (std::size_t i = 0; i < space.size(); ++i) {
    rows.emplace(serialize_sub_action(space[i]), static_cast<int>(i));
  }
  out << "sub_action,fitness,is_optimal\n";
  for (const auto& [text, idx] : rows) {
    const int f = table.fitness[idx];
    out << text << ',' << f << ',' << (f == table.max ? 1 : 0) << '\n';
  }
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(sep, start);
    if (end == std::string_view::npos) end = s.size();
    out.emplace_back(trim(s.substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

int parse_int(std::string_view s, const std::string& context) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(std::string(s), &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParseError(context + ": not an integer: \"" + std::string(s) + "\"");
  }
}

}  // namespace

Constraints load_constraints(std::istream& in, const std::string& source_name) {
  Constraints cs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view payload = trim(line);
    if (auto hash = payload.find('#'); hash != std::string_view::npos) {
      payload = trim(payload.substr(0, hash));
    }
    if (payload.empty()) continue;
    const std::string where = source_name + ":" + std::to_string(line_no);
    std::istringstream fields{std::string(payload)};
    std::string directive, arg1, arg2;
    fields >> directive >> arg1;
    try {
      if (directive == "fitness" || directive == "soft_fitness") {
        fields >> arg2;
        if (arg1.empty() || arg2.empty()) throw ParseError(where + ": expected <sub_action> <value>");
        cs.fitness_checks.push_back(
            {parse_sub_action(arg1), parse_int(arg2, where), directive == "fitness"});
      } else if (directive == "argmax") {
        if (arg1.empty()) throw ParseError(where + ": expected comma-separated sub-actions");
        std::vector<SubAction> set;
        for (const std::string& item : split(arg1, ',')) set.push_back(parse_sub_action(item));
        std::sort(set.begin(), set.end(),
                  [](const SubAction& a, const SubAction& b) { return sub_action_index(a) < sub_action_index(b); });
        cs.argmax = std::move(set);
      } else if (directive == "plateaus_min") {
        cs.plateaus_min = parse_int(arg1, where);
      } else {
        throw ParseError(where + ": unknown directive \"" + directive + "\"");
      }
    } catch (const ParseError& e) {
      std::string msg = e.what();
      if (msg.find(where) == std::string::npos) msg = where + ": " + msg;
      throw ParseError(msg);
    }
    std::string extra;
    if (fields >> extra) throw ParseError(where + ": unexpected trailing field \"" + extra + "\"");
  }
  return cs;
}

Constraints load_constraints_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open constraints file: " + path);
  return load_constraints(in, path);
}

namespace {

std::string join_sub_actions(const std::vector<SubAction>& list) {
  std::string out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i > 0) out += ',';
    out += serialize_sub_action(list[i]);
  }
  return out;
}

}  // namespace

ValidationReport validate_template_set(const TemplateSet& ts, const Constraints& cs, OrderMode mode) {
  ValidationReport report;
  const LandscapeTable table = enumerate_landscape(ts, mode);

  for (const auto& check : cs.fitness_checks) {
    const int observed = table.fitness[sub_action_index(check.d)];
    ValidationReport::Check c;
    c.hard = check.hard;
    c.pass = observed == check.expected;
    c.label = std::string(check.hard ? "fitness " : "soft_fitness ") + serialize_sub_action(check.d);
    c.detail = "expected " + std::to_string(check.expected) + ", observed " + std::to_string(observed);
    report.checks.push_back(std::move(c));
  }

  if (cs.argmax) {
    ValidationReport::Check c;
    c.label = "argmax";
    c.pass = table.argmax == *cs.argmax;
    c.detail = "expected {" + join_sub_actions(*cs.argmax) + "}, observed {" +
               join_sub_actions(table.argmax) + "} at fitness " + std::to_string(table.max);
    report.checks.push_back(std::move(c));
  }

  if (cs.plateaus_min) {
    std::set<int> below_max;
    for (int f : table.fitness) {
      if (f > 0 && f < table.max) below_max.insert(f);
    }
    ValidationReport::Check c;
    c.label = "plateaus_min " + std::to_string(*cs.plateaus_min);
    c.pass = static_cast<int>(below_max.size()) >= *cs.plateaus_min;
    c.detail = std::to_string(below_max.size()) + " distinct positive fitness values below max " +
               std::to_string(table.max);
    report.checks.push_back(std::move(c));
  }

  for (const auto& c : report.checks) {
    if (c.hard && !c.pass) report.all_hard_passed = false;
  }
  return report;
}

std::string ValidationReport::to_string() const {
  std::string out;
  for (const auto& c : checks) {
    if (c.hard) {
      out += c.pass ? "PASS " : "FAIL ";
    } else {
      out += c.pass ? "INFO " : "INFO (mismatch, not enforced) ";
    }
    out += c.label + ": " + c.detail + "\n";
  }
  out += all_hard_passed ? "overall: PASS\n" : "overall: FAIL\n";
  return out;
}

}  // namespace evoc
