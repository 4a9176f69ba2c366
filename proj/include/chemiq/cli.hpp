#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "chemiq/llmio.hpp"
#include "chemiq/qgen.hpp"

namespace chemiq {

// Everything the commands need that is not a per-invocation flag. Loaded from
// a JSON file ("chemiq-config/1"); command-line flags override single fields.
struct RunConfig {
  std::string corpus_path = "data/corpus_demo.smi";
  std::string templates_path = "data/templates.json";
  std::string nmr_small_path = "data/nmr_small.txt";
  std::string nmr_docs_dir = "data/nmr_zinc2d";
  uint64_t seed = 42;
  std::string out_dir = "out";
  std::string validator_url;  // empty: name questions stay ungraded
  std::map<std::string, ProviderConfig> providers;

  nlohmann::ordered_json to_json() const;
  static RunConfig from_json(const nlohmann::ordered_json& j);
  static RunConfig load(const std::string& path);

  // Stable fingerprint of the canonical serialization; recorded in the
  // manifest so downstream artifacts can be traced to their settings.
  std::string hash() const;
};

// Kept questions/transcripts/grades/report file names in one place so the
// commands and the tests agree on them.
std::string questions_path(const RunConfig& cfg);
std::string manifest_path(const RunConfig& cfg);
std::string transcripts_path(const RunConfig& cfg);
std::string grades_path(const RunConfig& cfg);
std::string report_csv_path(const RunConfig& cfg);
std::string report_md_path(const RunConfig& cfg);
std::string name_cache_path(const RunConfig& cfg);

struct GenerateArgs {
  std::string category;  // empty: the full default suite
};

struct RunArgs {
  std::string provider;       // key into RunConfig::providers
  std::string mock_fixture;   // shortcut: replay fixture, no provider config
  std::string questions;      // override questions file
};

struct GradeArgs {
  std::string questions;    // override
  std::string transcripts;  // override
  std::string model;        // label echoed into the summary line
};

struct ReportArgs {
  std::vector<std::string> grades;  // repeated NAME=PATH grade files
  std::string verdicts;             // combined per-question verdict table
};

struct VerifyArgs {
  std::string questions;          // override
  int coverage_instances = 5000;  // Monte-Carlo audit size, 0 disables
};

int cmd_generate(const RunConfig& cfg, const GenerateArgs& args, std::ostream& log);
int cmd_run(const RunConfig& cfg, const RunArgs& args, std::ostream& log);
int cmd_grade(const RunConfig& cfg, const GradeArgs& args, std::ostream& log);
int cmd_report(const RunConfig& cfg, const ReportArgs& args, std::ostream& log);
int cmd_verify(const RunConfig& cfg, const VerifyArgs& args, std::ostream& log);

// The audit behind `verify`, exposed for tests: re-derives every answer from
// the recorded structures with independent algorithms (all-pairs distances,
// brute-force isomorphism on small molecules, formula accounting, a fresh
// least-squares refit) and names each question that fails.
struct VerifyIssue {
  std::string question_id;
  std::string what;
};

struct VerifyReport {
  int checked = 0;
  std::vector<VerifyIssue> issues;
  double sar_coverage = -1.0;  // set when the Monte-Carlo audit ran
};

VerifyReport verify_questions(const std::vector<QuestionInstance>& questions,
                              int coverage_instances, uint64_t coverage_seed);

}  // namespace chemiq
