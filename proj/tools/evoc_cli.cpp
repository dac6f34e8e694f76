// evoc command-line tool. Talks to the simulator exclusively through the
// public C API in evoc.h.
//
// Exit codes: 0 success, 1 data/validation failure, 2 usage error.

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "evoc.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

int status_to_exit(evoc_status status) {
  switch (status) {
    case EVOC_OK: return kExitOk;
    case EVOC_ERR_IO:
    case EVOC_ERR_PARSE: return kExitFailure;
    case EVOC_ERR_CONFIG:
    case EVOC_ERR_INVALID: return kExitUsage;
  }
  return kExitFailure;
}

int fail(evoc_status status) {
  std::fprintf(stderr, "error: %s\n", evoc_last_error());
  return status_to_exit(status);
}

struct RunFlags {
  std::string config_path;
  std::optional<std::string> seed;
  bool chaining = false;
  bool cf = false;
  std::optional<int> iterations;
  std::optional<int> switch_at;  // 0 disables the switch
  std::optional<std::string> grid;
  std::optional<std::string> ff1, ff2;
  std::string out_path;
  std::string trace_path;
  std::string dump_path;
};

// Precedence: flags > config file > EVOC_SEED > built-in defaults.
int run_command(const RunFlags& flags) {
  evoc_run_config* cfg = evoc_run_config_new();
  struct Guard {
    evoc_run_config* cfg;
    ~Guard() { evoc_run_config_free(cfg); }
  } guard{cfg};

  const auto set = [&](const char* key, const std::string& value) {
    return evoc_run_config_set(cfg, key, value.c_str());
  };

  if (const char* env_seed = std::getenv("EVOC_SEED")) {
    if (auto st = set("society.seed", env_seed); st != EVOC_OK) return fail(st);
  }
  if (!flags.config_path.empty()) {
    if (auto st = evoc_run_config_load_file(cfg, flags.config_path.c_str()); st != EVOC_OK) {
      return fail(st);
    }
  }
  if (flags.seed) {
    if (auto st = set("society.seed", *flags.seed); st != EVOC_OK) return fail(st);
  }
  if (flags.chaining) {
    if (auto st = set("society.chaining", "true"); st != EVOC_OK) return fail(st);
  }
  if (flags.cf) {
    if (auto st = set("society.cf", "true"); st != EVOC_OK) return fail(st);
  }
  if (flags.iterations) {
    if (auto st = set("society.iterations", std::to_string(*flags.iterations)); st != EVOC_OK) {
      return fail(st);
    }
  }
  if (flags.switch_at) {
    const std::string value = *flags.switch_at <= 0 ? "none" : std::to_string(*flags.switch_at);
    if (auto st = set("society.switch_iteration", value); st != EVOC_OK) return fail(st);
  }
  if (flags.grid) {
    if (auto st = set("society.grid", *flags.grid); st != EVOC_OK) return fail(st);
  }
  if (flags.ff1) {
    if (auto st = set("run.ff1", *flags.ff1); st != EVOC_OK) return fail(st);
  }
  if (flags.ff2) {
    if (auto st = set("run.ff2", *flags.ff2); st != EVOC_OK) return fail(st);
  }
  if (!flags.trace_path.empty()) {
    if (auto st = set("run.trace", flags.trace_path); st != EVOC_OK) return fail(st);
  }
  if (!flags.dump_path.empty()) {
    if (auto st = set("run.dump_actions", flags.dump_path); st != EVOC_OK) return fail(st);
  }

  if (!flags.out_path.empty()) {
    if (auto st = evoc_run_simulation(cfg, flags.out_path.c_str(), nullptr); st != EVOC_OK) {
      return fail(st);
    }
    return kExitOk;
  }
  char* csv = nullptr;
  if (auto st = evoc_run_simulation(cfg, nullptr, &csv); st != EVOC_OK) return fail(st);
  std::fputs(csv, stdout);
  evoc_string_free(csv);
  return kExitOk;
}

struct BatchFlags {
  std::string config_path;
  std::optional<int> runs;
  std::optional<int> workers;
  std::optional<std::string> out_dir;
  std::optional<std::string> ff1, ff2;
  std::optional<std::string> base_seed;
  std::optional<std::string> conditions;
};

int batch_command(const BatchFlags& flags) {
  evoc_experiment* exp = evoc_experiment_new();
  struct Guard {
    evoc_experiment* exp;
    ~Guard() { evoc_experiment_free(exp); }
  } guard{exp};

  if (const char* env_seed = std::getenv("EVOC_SEED")) {
    if (auto st = evoc_experiment_set(exp, "experiment.base_seed", env_seed); st != EVOC_OK) {
      return fail(st);
    }
  }
  if (!flags.config_path.empty()) {
    if (auto st = evoc_experiment_load_file(exp, flags.config_path.c_str()); st != EVOC_OK) {
      return fail(st);
    }
  }
  const auto set = [&](const char* key, const std::string& value) {
    return evoc_experiment_set(exp, key, value.c_str());
  };
  if (flags.runs) {
    if (auto st = set("experiment.runs", std::to_string(*flags.runs)); st != EVOC_OK) {
      return fail(st);
    }
  }
  if (flags.workers) {
    if (auto st = set("experiment.workers", std::to_string(*flags.workers)); st != EVOC_OK) {
      return fail(st);
    }
  }
  if (flags.out_dir) {
    if (auto st = set("experiment.output", *flags.out_dir); st != EVOC_OK) return fail(st);
  }
  if (flags.ff1) {
    if (auto st = set("experiment.ff1", *flags.ff1); st != EVOC_OK) return fail(st);
  }
  if (flags.ff2) {
    if (auto st = set("experiment.ff2", *flags.ff2); st != EVOC_OK) return fail(st);
  }
  if (flags.base_seed) {
    if (auto st = set("experiment.base_seed", *flags.base_seed); st != EVOC_OK) return fail(st);
  }
  if (flags.conditions) {
    if (auto st = set("experiment.conditions", *flags.conditions); st != EVOC_OK) return fail(st);
  }

  if (auto st = evoc_experiment_run(exp); st != EVOC_OK) return fail(st);
  return kExitOk;
}

int oracle_command(const std::string& templates_path, const std::string& out_path) {
  evoc_template_set* ts = nullptr;
  if (auto st = evoc_template_set_load(templates_path.c_str(), &ts); st != EVOC_OK) {
    std::fprintf(stderr, "error: %s\n", evoc_last_error());
    return kExitFailure;  // template file problems are data failures
  }
  struct Guard {
    evoc_template_set* ts;
    ~Guard() { evoc_template_set_free(ts); }
  } guard{ts};

  if (auto st = evoc_landscape_write_csv(ts, out_path.c_str()); st != EVOC_OK) return fail(st);

  int max = 0;
  char* argmax = nullptr;
  if (auto st = evoc_landscape_max(ts, &max); st != EVOC_OK) return fail(st);
  if (auto st = evoc_landscape_argmax(ts, &argmax); st != EVOC_OK) return fail(st);
  std::printf("template set: %s (%zu templates)\n", evoc_template_set_id(ts),
              evoc_template_set_size(ts));
  std::printf("max fitness: %d\n", max);
  std::printf("argmax: %s\n", argmax);
  std::printf("landscape written to %s\n", out_path.c_str());
  evoc_string_free(argmax);
  return kExitOk;
}

int validate_command(const std::string& templates_path, const std::string& constraints_path) {
  evoc_template_set* ts = nullptr;
  if (auto st = evoc_template_set_load(templates_path.c_str(), &ts); st != EVOC_OK) {
    std::fprintf(stderr, "error: %s\n", evoc_last_error());
    return kExitFailure;
  }
  struct Guard {
    evoc_template_set* ts;
    ~Guard() { evoc_template_set_free(ts); }
  } guard{ts};

  char* report = nullptr;
  int all_passed = 0;
  if (auto st = evoc_validate(ts, constraints_path.c_str(), &report, &all_passed);
      st != EVOC_OK) {
    // A malformed constraints file is a usage problem, not a data failure.
    std::fprintf(stderr, "error: %s\n", evoc_last_error());
    return st == EVOC_ERR_PARSE ? kExitUsage : status_to_exit(st);
  }
  std::fputs(report, stdout);
  evoc_string_free(report);
  return all_passed ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evoc, an agent-based simulator of cumulative cultural evolution"};
  app.require_subcommand(1);

  RunFlags run_flags;
  auto* run = app.add_subcommand("run", "Execute one simulation run and emit a metrics CSV");
  run->add_option("--config", run_flags.config_path, "Config file (INI-style)");
  run->add_option("--seed", run_flags.seed, "Random seed");
  run->add_flag("--chaining", run_flags.chaining, "Enable chaining of sub-actions");
  run->add_flag("--cf", run_flags.cf, "Enable contextual focus");
  run->add_option("--iterations", run_flags.iterations, "Number of iterations");
  run->add_option("--switch-at", run_flags.switch_at,
                  "Iteration at which the second fitness function replaces the first (0 = never)");
  run->add_option("--grid", run_flags.grid, "Grid size as WxH, e.g. 10x10");
  run->add_option("--ff1", run_flags.ff1, "First template-set file");
  run->add_option("--ff2", run_flags.ff2, "Second template-set file");
  run->add_option("--out", run_flags.out_path, "Metrics CSV path (default: stdout)");
  run->add_option("--trace", run_flags.trace_path, "Per-agent trace CSV path");
  run->add_option("--dump-actions", run_flags.dump_path, "Final action dump path");

  BatchFlags batch_flags;
  auto* batch = app.add_subcommand("batch", "Run a batch experiment across conditions");
  batch->add_option("--config", batch_flags.config_path, "Experiment config file");
  batch->add_option("--runs", batch_flags.runs, "Runs per condition");
  batch->add_option("--workers", batch_flags.workers, "Parallel workers");
  batch->add_option("--out", batch_flags.out_dir, "Output directory");
  batch->add_option("--ff1", batch_flags.ff1, "First template-set file");
  batch->add_option("--ff2", batch_flags.ff2, "Second template-set file");
  batch->add_option("--base-seed", batch_flags.base_seed, "Base seed for run derivation");
  batch->add_option("--conditions", batch_flags.conditions,
                    "Comma list: neither,chaining_only,cf_only,chaining_and_cf");

  std::string oracle_templates, oracle_out = "landscape.csv";
  auto* oracle = app.add_subcommand("oracle", "Enumerate the full 729-sub-action landscape");
  oracle->add_option("--templates", oracle_templates, "Template-set file")->required();
  oracle->add_option("--out", oracle_out, "Landscape CSV path");

  std::string validate_templates, validate_constraints;
  auto* validate = app.add_subcommand("validate", "Check a template set against a constraints file");
  validate->add_option("--templates", validate_templates, "Template-set file")->required();
  validate->add_option("--constraints", validate_constraints, "Constraints file")->required();

  std::string plot_dir;
  auto* plot = app.add_subcommand("plot", "Regenerate SVG charts from batch CSVs");
  plot->add_option("--dir", plot_dir, "Directory holding per-condition CSVs")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // help goes to stdout, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (run->parsed()) return run_command(run_flags);
  if (batch->parsed()) return batch_command(batch_flags);
  if (oracle->parsed()) return oracle_command(oracle_templates, oracle_out);
  if (validate->parsed()) return validate_command(validate_templates, validate_constraints);
  if (plot->parsed()) {
    if (auto st = evoc_plot_directory(plot_dir.c_str()); st != EVOC_OK) return fail(st);
    return kExitOk;
  }
  return kExitUsage;
}
