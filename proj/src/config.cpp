#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

namespace evoc {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "yes" || value == "1" || value == "on") return true;
  if (value == "false" || value == "no" || value == "0" || value == "off") return false;
  throw ConfigError(key + ": expected a boolean, got \"" + value + "\"");
}

long long parse_int(const std::string& value, const std::string& key) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError(key + ": expected an integer, got \"" + value + "\"");
  }
  return out;
}

std::uint64_t parse_u64(const std::string& value, const std::string& key) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError(key + ": expected an unsigned integer, got \"" + value + "\"");
  }
  return out;
}

double parse_real(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got \"" + value + "\"");
  }
}

}  // namespace

KvDoc parse_kv(std::istream& in, const std::string& source_name) {
  KvDoc doc;
  std::string section;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string payload = trim(line);
    if (payload.empty()) continue;
    const std::string where = source_name + ":" + std::to_string(line_no);
    if (payload.front() == '[') {
      if (payload.back() != ']' || payload.size() < 3) {
        throw ParseError(where + ": malformed section header \"" + payload + "\"");
      }
      section = trim(payload.substr(1, payload.size() - 2));
      continue;
    }
    const auto eq = payload.find('=');
    if (eq == std::string::npos) {
      throw ParseError(where + ": expected \"key = value\", got \"" + payload + "\"");
    }
    const std::string key = trim(payload.substr(0, eq));
    const std::string value = trim(payload.substr(eq + 1));
    if (key.empty()) throw ParseError(where + ": empty key");
    const std::string full = section.empty() ? key : section + "." + key;
    if (doc.count(full)) throw ParseError(where + ": duplicate key \"" + full + "\"");
    doc[full] = value;
  }
  return doc;
}

KvDoc parse_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  return parse_kv(in, path);
}

void apply_society_key(SocietyConfig& config, const std::string& key, const std::string& value) {
  if (key == "society.grid_width") {
    config.grid_width = static_cast<int>(parse_int(value, key));
  } else if (key == "society.grid_height") {
    config.grid_height = static_cast<int>(parse_int(value, key));
  } else if (key == "society.grid") {
    const auto x = value.find('x');
    if (x == std::string::npos) throw ConfigError(key + ": expected WxH, got \"" + value + "\"");
    config.grid_width = static_cast<int>(parse_int(trim(value.substr(0, x)), key));
    config.grid_height = static_cast<int>(parse_int(trim(value.substr(x + 1)), key));
  } else if (key == "society.neighborhood") {
    if (value == "moore") {
      config.neighborhood = Neighborhood::Moore;
    } else if (value == "von_neumann") {
      config.neighborhood = Neighborhood::VonNeumann;
    } else {
      throw ConfigError(key + ": expected moore or von_neumann, got \"" + value + "\"");
    }
  } else if (key == "society.invention_probability") {
    config.invention_probability = parse_real(value, key);
  } else if (key == "society.iterations") {
    config.iterations = static_cast<int>(parse_int(value, key));
  } else if (key == "society.switch_iteration") {
    if (value == "none" || value == "0") {
      config.switch_iteration.reset();
    } else {
      config.switch_iteration = static_cast<int>(parse_int(value, key));
    }
  } else if (key == "society.chaining") {
    config.chaining_enabled = parse_bool(value, key);
  } else if (key == "society.cf") {
    config.cf_enabled = parse_bool(value, key);
  } else if (key == "society.seed") {
    config.seed = parse_u64(value, key);
  } else if (key == "society.max_action_length") {
    config.max_action_length = static_cast<int>(parse_int(value, key));
  } else if (key == "society.order_mode") {
    if (value == "count") {
      config.order_mode = OrderMode::Count;
    } else if (value == "signed_sum") {
      config.order_mode = OrderMode::SignedSum;
    } else {
      throw ConfigError(key + ": expected count or signed_sum, got \"" + value + "\"");
    }
  } else if (key == "society.cf_update_policy") {
    if (value == "implemented") {
      config.cf_policy = CfUpdatePolicy::Implemented;
    } else if (value == "candidate") {
      config.cf_policy = CfUpdatePolicy::Candidate;
    } else {
      throw ConfigError(key + ": expected implemented or candidate, got \"" + value + "\"");
    }
  } else if (key == "cf.a") {
    config.cf_params.a = parse_real(value, key);
  } else if (key == "cf.b") {
    config.cf_params.b = parse_real(value, key);
  } else if (key == "cf.rcc_min") {
    config.cf_params.rcc_min = parse_real(value, key);
  } else if (key == "cf.rcc_max") {
    config.cf_params.rcc_max = parse_real(value, key);
  } else {
    throw ConfigError("unknown config key \"" + key + "\"");
  }
}

void apply_run_key(RunSetup& setup, const std::string& key, const std::string& value) {
  if (key == "run.ff1") {
    setup.outputs.ff1_path = value;
  } else if (key == "run.ff2") {
    setup.outputs.ff2_path = value;
  } else if (key == "run.out") {
    setup.outputs.metrics_path = value;
  } else if (key == "run.trace") {
    setup.outputs.trace_path = value;
  } else if (key == "run.dump_actions") {
    setup.outputs.action_dump_path = value;
  } else {
    apply_society_key(setup.society, key, value);
  }
}

void apply_experiment_key(ExperimentConfig& config, const std::string& key,
                          const std::string& value) {
  if (key == "experiment.runs") {
    config.runs = static_cast<int>(parse_int(value, key));
  } else if (key == "experiment.conditions") {
    std::vector<Condition> conditions;
    std::istringstream list(value);
    std::string item;
    while (std::getline(list, item, ',')) {
      const std::string name = trim(item);
      const auto c = condition_from_name(name);
      if (!c) throw ConfigError(key + ": unknown condition \"" + name + "\"");
      conditions.push_back(*c);
    }
    if (conditions.empty()) throw ConfigError(key + ": empty condition list");
    config.conditions = std::move(conditions);
  } else if (key == "experiment.ff1") {
    config.ff1_path = value;
  } else if (key == "experiment.ff2") {
    config.ff2_path = value;
  } else if (key == "experiment.output") {
    config.output_dir = value;
  } else if (key == "experiment.base_seed") {
    config.base_seed = parse_u64(value, key);
  } else if (key == "experiment.workers") {
    config.workers = static_cast<int>(parse_int(value, key));
  } else {
    apply_society_key(config.base, key, value);
  }
}

RunSetup run_setup_from_doc(const KvDoc& doc) {
  RunSetup setup;
  for (const auto& [key, value] : doc) apply_run_key(setup, key, value);
  return setup;
}

ExperimentConfig experiment_from_doc(const KvDoc& doc) {
  ExperimentConfig config;
  for (const auto& [key, value] : doc) apply_experiment_key(config, key, value);
  return config;
}

}  // namespace evoc
