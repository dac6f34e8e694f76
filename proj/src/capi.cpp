#include "evoc.h"

#include <cstring>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "domain.hpp"
#include "experiment.hpp"
#include "fitness.hpp"
#include "society.hpp"

struct evoc_template_set {
  evoc::TemplateSet set;
};

struct evoc_run_config {
  evoc::RunSetup setup;
};

struct evoc_experiment {
  evoc::ExperimentConfig config;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

template <typename Fn>
evoc_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const evoc::ParseError& e) {
    set_error(e.what());
    return EVOC_ERR_PARSE;
  } catch (const evoc::ConfigError& e) {
    set_error(e.what());
    return EVOC_ERR_CONFIG;
  } catch (const evoc::IoError& e) {
    set_error(e.what());
    return EVOC_ERR_IO;
  } catch (const std::exception& e) {
    set_error(e.what());
    return EVOC_ERR_INVALID;
  }
}

evoc_status invalid(const char* message) {
  set_error(message);
  return EVOC_ERR_INVALID;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* evoc_version(void) { return "1.0.0"; }

const char* evoc_last_error(void) { return g_last_error.c_str(); }

void evoc_string_free(char* s) { std::free(s); }

evoc_status evoc_template_set_load(const char* path, evoc_template_set** out) {
  if (!path || !out) return invalid("evoc_template_set_load: null argument");
  return guarded([&] {
    auto* handle = new evoc_template_set{evoc::load_template_set_file(path)};
    *out = handle;
    return EVOC_OK;
  });
}

evoc_status evoc_template_set_parse(const char* text, evoc_template_set** out) {
  if (!text || !out) return invalid("evoc_template_set_parse: null argument");
  return guarded([&] {
    std::istringstream in{std::string(text)};
    auto* handle = new evoc_template_set{evoc::load_template_set(in, "<string>")};
    *out = handle;
    return EVOC_OK;
  });
}

void evoc_template_set_free(evoc_template_set* ts) { delete ts; }

size_t evoc_template_set_size(const evoc_template_set* ts) {
  return ts ? static_cast<size_t>(ts->set.size()) : 0;
}

const char* evoc_template_set_id(const evoc_template_set* ts) {
  return ts ? ts->set.id.c_str() : "";
}

evoc_status evoc_sub_action_fitness(const evoc_template_set* ts, const char* sub_action,
                                    int* out_fitness) {
  if (!ts || !sub_action || !out_fitness) return invalid("evoc_sub_action_fitness: null argument");
  return guarded([&] {
    *out_fitness = evoc::sub_action_fitness(evoc::parse_sub_action(sub_action), ts->set);
    return EVOC_OK;
  });
}

evoc_status evoc_landscape_write_csv(const evoc_template_set* ts, const char* out_path) {
  if (!ts || !out_path) return invalid("evoc_landscape_write_csv: null argument");
  return guarded([&] {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw evoc::IoError(std::string("cannot write landscape CSV: ") + out_path);
    evoc::write_landscape_csv(evoc::enumerate_landscape(ts->set), out);
    return EVOC_OK;
  });
}

evoc_status evoc_landscape_argmax(const evoc_template_set* ts, char** out_argmax) {
  if (!ts || !out_argmax) return invalid("evoc_landscape_argmax: null argument");
  return guarded([&] {
    const auto table = evoc::enumerate_landscape(ts->set);
    std::string joined;
    for (std::size_t i = 0; i < table.argmax.size(); ++i) {
      if (i > 0) joined += ',';
      joined += evoc::serialize_sub_action(table.argmax[i]);
    }
    *out_argmax = dup_string(joined);
    return EVOC_OK;
  });
}

evoc_status evoc_landscape_max(const evoc_template_set* ts, int* out_max) {
  if (!ts || !out_max) return invalid("evoc_landscape_max: null argument");
  return guarded([&] {
    *out_max = evoc::enumerate_landscape(ts->set).max;
    return EVOC_OK;
  });
}

evoc_status evoc_validate(const evoc_template_set* ts, const char* constraints_path,
                          char** out_report, int* out_all_hard_passed) {
  if (!ts || !constraints_path) return invalid("evoc_validate: null argument");
  return guarded([&] {
    const auto constraints = evoc::load_constraints_file(constraints_path);
    const auto report = evoc::validate_template_set(ts->set, constraints);
    if (out_report) *out_report = dup_string(report.to_string());
    if (out_all_hard_passed) *out_all_hard_passed = report.all_hard_passed ? 1 : 0;
    return EVOC_OK;
  });
}

evoc_run_config* evoc_run_config_new(void) { return new evoc_run_config{}; }

void evoc_run_config_free(evoc_run_config* cfg) { delete cfg; }

evoc_status evoc_run_config_load_file(evoc_run_config* cfg, const char* path) {
  if (!cfg || !path) return invalid("evoc_run_config_load_file: null argument");
  return guarded([&] {
    for (const auto& [key, value] : evoc::parse_kv_file(path)) {
      evoc::apply_run_key(cfg->setup, key, value);
    }
    return EVOC_OK;
  });
}

evoc_status evoc_run_config_set(evoc_run_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return invalid("evoc_run_config_set: null argument");
  return guarded([&] {
    evoc::apply_run_key(cfg->setup, key, value);
    return EVOC_OK;
  });
}

evoc_status evoc_run_simulation(const evoc_run_config* cfg, const char* metrics_path,
                                char** out_metrics_csv) {
  if (!cfg) return invalid("evoc_run_simulation: null config");
  if (!metrics_path && !out_metrics_csv) {
    return invalid("evoc_run_simulation: need a metrics path or an output string");
  }
  return guarded([&] {
    const auto& setup = cfg->setup;
    const auto errors = setup.society.validate();
    if (!errors.empty()) {
      std::string msg = "invalid society config:";
      for (const auto& e : errors) msg += "\n  - " + e;
      throw evoc::ConfigError(msg);
    }

    const evoc::TemplateSet ff1 = evoc::load_template_set_file(setup.outputs.ff1_path);
    evoc::TemplateSet ff2;
    const bool needs_ff2 = setup.society.switch_iteration.has_value();
    if (needs_ff2) ff2 = evoc::load_template_set_file(setup.outputs.ff2_path);

    std::ofstream trace;
    if (!setup.outputs.trace_path.empty()) {
      trace.open(setup.outputs.trace_path, std::ios::binary);
      if (!trace) throw evoc::IoError("cannot write trace: " + setup.outputs.trace_path);
    }

    const auto result = evoc::run(setup.society, ff1, needs_ff2 ? &ff2 : nullptr,
                                  trace.is_open() ? &trace : nullptr);

    if (!setup.outputs.action_dump_path.empty()) {
      std::ofstream dump(setup.outputs.action_dump_path, std::ios::binary);
      if (!dump) throw evoc::IoError("cannot write action dump: " + setup.outputs.action_dump_path);
      evoc::write_action_dump(result.society, dump);
    }

    std::ostringstream csv;
    evoc::write_metrics_csv(result.metrics, csv);
    if (metrics_path) {
      std::ofstream out(metrics_path, std::ios::binary);
      if (!out) throw evoc::IoError(std::string("cannot write metrics: ") + metrics_path);
      out << csv.str();
    }
    if (out_metrics_csv) *out_metrics_csv = dup_string(csv.str());
    return EVOC_OK;
  });
}

evoc_experiment* evoc_experiment_new(void) { return new evoc_experiment{}; }

void evoc_experiment_free(evoc_experiment* exp) { delete exp; }

evoc_status evoc_experiment_load_file(evoc_experiment* exp, const char* path) {
  if (!exp || !path) return invalid("evoc_experiment_load_file: null argument");
  return guarded([&] {
    for (const auto& [key, value] : evoc::parse_kv_file(path)) {
      evoc::apply_experiment_key(exp->config, key, value);
    }
    return EVOC_OK;
  });
}

evoc_status evoc_experiment_set(evoc_experiment* exp, const char* key, const char* value) {
  if (!exp || !key || !value) return invalid("evoc_experiment_set: null argument");
  return guarded([&] {
    evoc::apply_experiment_key(exp->config, key, value);
    return EVOC_OK;
  });
}

evoc_status evoc_experiment_run(const evoc_experiment* exp) {
  if (!exp) return invalid("evoc_experiment_run: null handle");
  return guarded([&] {
    const evoc::TemplateSet ff1 = evoc::load_template_set_file(exp->config.ff1_path);
    const evoc::TemplateSet ff2 = evoc::load_template_set_file(exp->config.ff2_path);
    const auto aggregate = evoc::run_batch(exp->config, ff1, ff2);
    evoc::write_outputs(aggregate, exp->config);
    return EVOC_OK;
  });
}

evoc_status evoc_plot_directory(const char* dir) {
  if (!dir) return invalid("evoc_plot_directory: null directory");
  return guarded([&] {
    evoc::plot_directory(dir);
    return EVOC_OK;
  });
}

}  // extern "C"
