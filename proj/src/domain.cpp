#include "domain.hpp"

#include <fstream>
#include <istream>
#include <set>
#include <sstream>

namespace evoc {

namespace {

std::string position_token(int v) {
  switch (v) {
    case -1: return "-1";
    case 0: return "0";
    case 1: return "1";
    default: return "*";
  }
}

// Greedy left-to-right scan over {0, 1, -1} and optionally '*'. "-1" is the
// only two-character token, so the grammar is unambiguous.
std::array<Slot, kBodyParts> parse_components(std::string_view text, bool allow_wildcard,
                                              const char* what) {
  std::array<Slot, kBodyParts> out{};
  std::size_t pos = 0;
  for (int j = 0; j < kBodyParts; ++j) {
    if (pos >= text.size()) {
      throw ParseError(std::string(what) + " \"" + std::string(text) + "\": expected 6 components, got " +
                       std::to_string(j));
    }
    const char c = text[pos];
    if (c == '0') {
      out[j] = 0;
      ++pos;
    } else if (c == '1') {
      out[j] = 1;
      ++pos;
    } else if (c == '-') {
      if (pos + 1 >= text.size() || text[pos + 1] != '1') {
        throw ParseError(std::string(what) + " \"" + std::string(text) + "\": component " +
                         std::to_string(j + 1) + " (char " + std::to_string(pos + 1) +
                         "): '-' must be followed by '1'");
      }
      out[j] = -1;
      pos += 2;
    } else if (c == '*' && allow_wildcard) {
      out[j] = kUnspecified;
      ++pos;
    } else {
      throw ParseError(std::string(what) + " \"" + std::string(text) + "\": component " +
                       std::to_string(j + 1) + " (char " + std::to_string(pos + 1) +
                       "): illegal character '" + std::string(1, c) + "'");
    }
  }
  if (pos != text.size()) {
    throw ParseError(std::string(what) + " \"" + std::string(text) +
                     "\": trailing characters after 6 components (char " + std::to_string(pos + 1) + ")");
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

SubAction parse_sub_action(std::string_view text) {
  const auto slots = parse_components(text, false, "sub-action");
  SubAction d;
  for (int j = 0; j < kBodyParts; ++j) d.components[j] = static_cast<Position>(slots[j]);
  return d;
}

std::string serialize_sub_action(const SubAction& d) {
  std::string out;
  for (int j = 0; j < kBodyParts; ++j) out += position_token(d.components[j]);
  return out;
}

Template parse_template(std::string_view text) {
  Template t;
  t.slots = parse_components(text, true, "template");
  return t;
}

std::string serialize_template(const Template& t) {
  std::string out;
  for (int j = 0; j < kBodyParts; ++j) {
    out += t.specified(j) ? position_token(t.slots[j]) : "*";
  }
  return out;
}

std::string serialize_action(const Action& a) {
  std::string out;
  for (int i = 0; i < a.length(); ++i) {
    if (i > 0) out += ';';
    out += serialize_sub_action(a.seq[i]);
  }
  return out;
}

TemplateSet load_template_set(std::istream& in, const std::string& source_name) {
  TemplateSet ts;
  std::set<Template> seen;
  bool have_id = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view payload = trim(line);
    if (auto hash = payload.find('#'); hash != std::string_view::npos) {
      payload = trim(payload.substr(0, hash));
    }
    if (payload.empty()) continue;
    if (!have_id) {
      if (!payload.starts_with("id:")) {
        throw ParseError(source_name + ":" + std::to_string(line_no) +
                         ": first payload line must be \"id: <name>\"");
      }
      ts.id = std::string(trim(payload.substr(3)));
      if (ts.id.empty()) {
        throw ParseError(source_name + ":" + std::to_string(line_no) + ": empty template-set id");
      }
      have_id = true;
      continue;
    }
    Template t;
    try {
      t = parse_template(payload);
    } catch (const ParseError& e) {
      throw ParseError(source_name + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (!seen.insert(t).second) {
      throw ParseError(source_name + ":" + std::to_string(line_no) + ": duplicate template " +
                       serialize_template(t));
    }
    ts.templates.push_back(t);
  }
  if (!have_id) throw ParseError(source_name + ": missing \"id: <name>\" line");
  if (ts.templates.empty()) throw ParseError(source_name + ": empty set");
  return ts;
}

TemplateSet load_template_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open template-set file: " + path);
  return load_template_set(in, path);
}

const std::vector<SubAction>& all_sub_actions() {
  static const std::vector<SubAction> space = [] {
    std::vector<SubAction> out;
    out.reserve(kSubActionCount);
    for (int i = 0; i < kSubActionCount; ++i) {
      SubAction d;
      int rest = i;
      for (int j = kBodyParts - 1; j >= 0; --j) {
        d.components[j] = static_cast<Position>(rest % 3 - 1);
        rest /= 3;
      }
      out.push_back(d);
    }
    return out;
  }();
  return space;
}

int sub_action_index(const SubAction& d) {
  int idx = 0;
  for (int j = 0; j < kBodyParts; ++j) idx = idx * 3 + (d.components[j] + 1);
  return idx;
}

}  // namespace evoc
