#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "experiment.hpp"
#include "society.hpp"

namespace evoc {

// Flat INI-style document: "[section]" headers, "key = value" lines, '#'
// comments. Keys are reported as "section.key"; lines before any section
// header live in the "" section and are addressed as plain "key".
using KvDoc = std::map<std::string, std::string>;

KvDoc parse_kv(std::istream& in, const std::string& source_name);
KvDoc parse_kv_file(const std::string& path);

// Known sections: [society], [cf], [run] (output paths), [experiment].
// Unknown keys raise ConfigError.
void apply_society_key(SocietyConfig& config, const std::string& key, const std::string& value);
void apply_experiment_key(ExperimentConfig& config, const std::string& key,
                          const std::string& value);

struct RunOutputs {
  std::string ff1_path = "data/ff1.tmpl";
  std::string ff2_path = "data/ff2.tmpl";
  std::string metrics_path;  // empty = stdout
  std::string trace_path;
  std::string action_dump_path;
};

struct RunSetup {
  SocietyConfig society;
  RunOutputs outputs;
};

void apply_run_key(RunSetup& setup, const std::string& key, const std::string& value);

RunSetup run_setup_from_doc(const KvDoc& doc);
ExperimentConfig experiment_from_doc(const KvDoc& doc);

}  // namespace evoc
