#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "chemiq/cli.hpp"
#include "chemiq/util.hpp"

namespace chemiq {

namespace {
constexpr const char* kSchema = "chemiq-config/1";
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = kSchema;
  j["corpus"] = corpus_path;
  j["templates"] = templates_path;
  j["nmr_small"] = nmr_small_path;
  j["nmr_docs_dir"] = nmr_docs_dir;
  j["seed"] = seed;
  j["out_dir"] = out_dir;
  j["validator_url"] = validator_url;
  auto p = nlohmann::ordered_json::object();
  for (const auto& [name, cfg] : providers) p[name] = cfg.to_json();
  j["providers"] = std::move(p);
  return j;
}

RunConfig RunConfig::from_json(const nlohmann::ordered_json& j) {
  const std::string schema = j.value("schema", "");
  if (schema != kSchema)
    throw std::runtime_error("config: expected schema " + std::string(kSchema) +
                             ", got '" + schema + "'");
  RunConfig cfg;
  cfg.corpus_path = j.value("corpus", cfg.corpus_path);
  cfg.templates_path = j.value("templates", cfg.templates_path);
  cfg.nmr_small_path = j.value("nmr_small", cfg.nmr_small_path);
  cfg.nmr_docs_dir = j.value("nmr_docs_dir", cfg.nmr_docs_dir);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.out_dir = j.value("out_dir", cfg.out_dir);
  cfg.validator_url = j.value("validator_url", cfg.validator_url);
  if (j.contains("providers")) {
    for (const auto& [name, pj] : j.at("providers").items()) {
      ProviderConfig pc = ProviderConfig::from_json(pj);
      if (pc.name.empty()) pc.name = name;
      cfg.providers[name] = std::move(pc);
    }
  }
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw std::runtime_error("config: cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(nlohmann::ordered_json::parse(buf.str()));
}

std::string RunConfig::hash() const {
  // Where the artifacts land has no bearing on what they contain, so the
  // output directory stays out of the fingerprint.
  auto j = to_json();
  j.erase("out_dir");
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(j.dump())));
  return buf;
}

namespace {
std::string join(const RunConfig& cfg, const char* name) {
  return (std::filesystem::path(cfg.out_dir) / name).string();
}
}  // namespace

std::string questions_path(const RunConfig& cfg) { return join(cfg, "questions.jsonl"); }
std::string manifest_path(const RunConfig& cfg) { return join(cfg, "manifest.json"); }
std::string transcripts_path(const RunConfig& cfg) { return join(cfg, "transcripts.jsonl"); }
std::string grades_path(const RunConfig& cfg) { return join(cfg, "grades.csv"); }
std::string report_csv_path(const RunConfig& cfg) { return join(cfg, "report.csv"); }
std::string report_md_path(const RunConfig& cfg) { return join(cfg, "report.md"); }
std::string name_cache_path(const RunConfig& cfg) { return join(cfg, "name_cache.json"); }

}  // namespace chemiq
