#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>

#include <Eigen/Dense>

#include "chemiq/cli.hpp"
#include "chemiq/grade.hpp"
#include "chemiq/ingest.hpp"
#include "chemiq/molgraph.hpp"
#include "chemiq/stats.hpp"
#include "chemiq/util.hpp"

namespace fs = std::filesystem;

namespace chemiq {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Inputs {
  Corpus corpus;
  TemplateLibrary templates;
  std::vector<SmallNmrEntry> small;
  std::vector<SpectraSet> docs;
};

Inputs load_inputs(const RunConfig& cfg, bool need_corpus, bool need_templates,
                   bool need_nmr, std::ostream& log) {
  Inputs in;
  if (need_corpus) {
    in.corpus = load_corpus(cfg.corpus_path, {});
    const auto& st = in.corpus.stats;
    log << "corpus: kept " << in.corpus.entries.size() << " of " << st.lines
        << " lines (" << st.parse_failures << " unparsable, " << st.filter_rejections
        << " filtered, " << st.duplicates << " duplicate)\n";
  }
  if (need_templates) in.templates = load_templates(cfg.templates_path);
  if (need_nmr) {
    in.small = load_small_nmr(cfg.nmr_small_path);
    std::vector<std::string> paths;
    for (const auto& e : fs::directory_iterator(cfg.nmr_docs_dir))
      paths.push_back(e.path().string());
    std::sort(paths.begin(), paths.end());
    for (const auto& p : paths) in.docs.push_back(load_nmr_prediction_file(p));
  }
  return in;
}

std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out.good()) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace

int cmd_generate(const RunConfig& cfg, const GenerateArgs& args, std::ostream& log) {
  const auto t0 = std::chrono::steady_clock::now();
  const bool all = args.category.empty();
  const bool need_corpus =
      all || args.category == "counting_carbon" || args.category == "counting_ring" ||
      args.category == "shortest_path" || args.category == "atom_mapping" ||
      args.category == "smiles_to_iupac";
  const bool need_templates = all || args.category == "functional_group" ||
                              args.category == "locant" || args.category == "reaction";
  const bool need_nmr = all || args.category == "nmr_elucidation";

  Inputs in = load_inputs(cfg, need_corpus, need_templates, need_nmr, log);
  SuiteInputs si{&in.corpus, &in.templates, &in.small, &in.docs};

  std::vector<QuestionInstance> questions =
      all ? generate_suite(si, cfg.seed) : generate_category(si, cfg.seed, args.category);

  fs::create_directories(cfg.out_dir);
  save_questions(questions_path(cfg), questions);

  std::map<std::string, int> counts;
  for (const auto& q : questions) {
    std::string key = q.category;
    if (!q.variant.empty()) key += "/" + q.variant;
    counts[key]++;
  }
  nlohmann::ordered_json manifest;
  manifest["schema"] = "chemiq-manifest/1";
  manifest["seed"] = cfg.seed;
  manifest["config_hash"] = cfg.hash();
  manifest["category"] = all ? "all" : args.category;
  manifest["total"] = questions.size();
  auto jc = nlohmann::ordered_json::object();
  for (const auto& [key, n] : counts) jc[key] = n;  // std::map keeps keys sorted
  manifest["counts"] = std::move(jc);
  write_file(manifest_path(cfg), manifest.dump(2) + "\n");

  char elapsed[32];
  std::snprintf(elapsed, sizeof(elapsed), "%.1f", seconds_since(t0));
  log << "generated " << questions.size() << " questions -> " << questions_path(cfg)
      << " (" << elapsed << " s)\n";
  return 0;
}

int cmd_run(const RunConfig& cfg, const RunArgs& args, std::ostream& log) {
  const std::string qpath = args.questions.empty() ? questions_path(cfg) : args.questions;
  const auto questions = load_questions(qpath);

  ProviderConfig pc;
  if (!args.mock_fixture.empty()) {
    pc.name = "mock";
    pc.model = "mock";
    pc.mock_fixture = args.mock_fixture;
    pc.max_concurrent = 1;
  } else if (!args.provider.empty()) {
    auto it = cfg.providers.find(args.provider);
    if (it == cfg.providers.end()) {
      log << "unknown provider '" << args.provider << "'; configured:";
      for (const auto& [name, unused] : cfg.providers) log << " " << name;
      log << "\n";
      return 1;
    }
    pc = it->second;
  } else {
    log << "run: need --provider or --mock-fixture\n";
    return 1;
  }
  pc.validate();

  auto provider = make_provider(pc);
  fs::create_directories(cfg.out_dir);
  RunOptions opt;
  opt.transcripts_path = transcripts_path(cfg);
  opt.max_concurrent = pc.max_concurrent;
  opt.retries = pc.retries;

  const auto transcripts = run_batch(questions, *provider, opt);
  int failures = 0;
  for (const auto& t : transcripts)
    if (!t.error.empty()) ++failures;
  log << "ran " << transcripts.size() << " questions with " << pc.name << " ("
      << provider->model() << "), " << failures << " failed -> "
      << opt.transcripts_path << "\n";
  return failures == 0 ? 0 : 1;
}

int cmd_grade(const RunConfig& cfg, const GradeArgs& args, std::ostream& log) {
  const std::string qpath = args.questions.empty() ? questions_path(cfg) : args.questions;
  const std::string tpath =
      args.transcripts.empty() ? transcripts_path(cfg) : args.transcripts;
  const auto questions = load_questions(qpath);
  const auto transcripts = load_transcripts(tpath);

  std::map<std::string, std::string> responses;
  for (const auto& t : transcripts)
    if (t.error.empty()) responses[t.question_id] = t.output;

  std::string url = cfg.validator_url;
  if (const char* env = std::getenv("CHEMIQ_VALIDATOR_URL"); env && *env) url = env;

  std::unique_ptr<HttpIupacValidator> validator;
  if (!url.empty()) {
    fs::create_directories(cfg.out_dir);
    validator = std::make_unique<HttpIupacValidator>(url, name_cache_path(cfg));
    log << "name validator: " << url << "\n";
  } else {
    log << "name validator: none configured, name questions stay ungraded\n";
  }

  const auto grades = grade_batch(questions, responses, validator.get());
  if (validator) validator->save_cache();

  fs::create_directories(cfg.out_dir);
  write_file(grades_path(cfg), grades_to_csv(grades));

  std::map<Verdict, int> histogram;
  for (const auto& g : grades) histogram[g.verdict]++;
  log << "graded " << grades.size();
  if (!args.model.empty()) log << " (" << args.model << ")";
  log << ": " << histogram[Verdict::Correct] << " correct, "
      << histogram[Verdict::Incorrect] << " incorrect, "
      << histogram[Verdict::Unparseable] << " unparseable, "
      << histogram[Verdict::Ungraded] << " ungraded -> " << grades_path(cfg) << "\n";
  return 0;
}

int cmd_report(const RunConfig& cfg, const ReportArgs& args, std::ostream& log) {
  std::vector<std::string> models;
  std::map<std::string, std::vector<GradeResult>> grades;

  auto add_model = [&](const std::string& name, std::vector<GradeResult> results) {
    if (grades.count(name))
      throw std::runtime_error("report: duplicate model name '" + name + "'");
    models.push_back(name);
    grades[name] = std::move(results);
  };

  for (const auto& spec : args.grades) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::runtime_error("report: --grades wants NAME=PATH, got '" + spec + "'");
    add_model(spec.substr(0, eq), grades_from_csv(slurp_file(spec.substr(eq + 1))));
  }
  if (!args.verdicts.empty()) {
    auto table = read_verdicts_csv(slurp_file(args.verdicts));
    for (const auto& name : table.models) add_model(name, std::move(table.grades[name]));
  }
  if (models.empty()) {
    log << "report: need --grades NAME=PATH and/or --verdicts FILE\n";
    return 1;
  }

  const auto report = build_report(models, grades);
  fs::create_directories(cfg.out_dir);
  write_file(report_csv_path(cfg), render_report_csv(report));
  write_file(report_md_path(cfg), render_report_md(report));
  log << "report over " << models.size() << " model(s) -> " << report_csv_path(cfg)
      << ", " << report_md_path(cfg) << "\n";
  return 0;
}

// --- verify ------------------------------------------------------------------

namespace {

// All-pairs bond distances, deliberately not the BFS the generator used.
std::vector<std::vector<int>> floyd_warshall(const Molecule& m) {
  const int n = static_cast<int>(m.atoms.size());
  constexpr int kInf = 1 << 28;
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, kInf));
  for (int i = 0; i < n; ++i) dist[i][i] = 0;
  for (const auto& b : m.bonds) dist[b.a][b.b] = dist[b.b][b.a] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
  return dist;
}

// Circuit rank from scratch: edges - vertices + components, with the
// component count taken from a plain union-find rather than the library.
int independent_ring_count(const Molecule& m) {
  const int n = static_cast<int>(m.atoms.size());
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n;
  for (const auto& b : m.bonds) {
    const int ra = find(b.a), rb = find(b.b);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return static_cast<int>(m.bonds.size()) - n + components;
}

std::string formula_from_prompt(const std::string& prompt) {
  const std::string tag = "Formula: ";
  const auto at = prompt.find(tag);
  if (at == std::string::npos) return "";
  auto end = prompt.find('\n', at);
  if (end == std::string::npos) end = prompt.size();
  return trim(prompt.substr(at + tag.size(), end - at - tag.size()));
}

Eigen::RowVectorXd design_row_from_combo(const std::vector<int>& combo) {
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(9);
  for (int s = 0; s < 3; ++s) row(3 * s + combo[s]) = 1.0;
  return row;
}

void check_question(const QuestionInstance& q, std::vector<std::string>& problems) {
  using Kind = AnswerSpec::Kind;
  auto expect_kind = [&](Kind want, const char* label) {
    if (q.answer.kind != want) {
      problems.push_back(std::string("answer kind should be ") + label);
      return false;
    }
    return true;
  };

  if (q.category == "counting_carbon" || q.category == "counting_ring") {
    if (!expect_kind(Kind::ExactInteger, "exact_integer")) return;
    const std::string smiles = q.meta.at("smiles").get<std::string>();
    if (q.prompt.find(smiles) == std::string::npos)
      problems.push_back("prompt does not contain the recorded structure");
    const Molecule m = parse_smiles(smiles);
    long counted = 0;
    if (q.category == "counting_carbon") {
      for (const auto& a : m.atoms)
        if (a.element == "C") ++counted;
    } else {
      counted = independent_ring_count(m);
    }
    if (counted != q.answer.integer)
      problems.push_back("recount gives " + std::to_string(counted) + ", answer says " +
                         std::to_string(q.answer.integer));
    return;
  }

  if (q.category == "shortest_path") {
    if (!expect_kind(Kind::ExactInteger, "exact_integer")) return;
    const Molecule m = parse_smiles(q.meta.at("smiles").get<std::string>());
    std::vector<int> markers;
    for (size_t i = 0; i < m.atoms.size(); ++i)
      if (m.atoms[i].element == "*") markers.push_back(static_cast<int>(i));
    if (markers.size() != 2) {
      problems.push_back("expected exactly two markers, found " +
                         std::to_string(markers.size()));
      return;
    }
    const auto dist = floyd_warshall(m);
    const int d = dist[markers[0]][markers[1]];
    if (d != q.answer.integer)
      problems.push_back("all-pairs distance " + std::to_string(d) + ", answer says " +
                         std::to_string(q.answer.integer));
    if (shortest_path_bonds(m, markers[0], markers[1]) != d)
      problems.push_back("breadth-first and all-pairs distances disagree");
    return;
  }

  if (q.category == "atom_mapping") {
    if (!expect_kind(Kind::TupleMapping, "tuple_mapping")) return;
    const Molecule m1 = parse_smiles(q.meta.at("smiles1").get<std::string>());
    const Molecule m2 = parse_smiles(q.meta.at("smiles2").get<std::string>());
    const auto& tuples = q.answer.tuples;
    const int n = static_cast<int>(m1.atoms.size());
    if (static_cast<int>(m2.atoms.size()) != n) {
      problems.push_back("the two spellings have different atom counts");
      return;
    }
    if (static_cast<int>(tuples.size()) != n) {
      problems.push_back("mapping length does not cover every atom");
      return;
    }
    std::vector<int> to2(n, -1);
    std::vector<bool> hit(n, false);
    for (const auto& [a, b] : tuples) {
      if (a < 0 || a >= n || b < 0 || b >= n || to2[a] != -1 || hit[b]) {
        problems.push_back("mapping is not a bijection");
        return;
      }
      to2[a] = b;
      hit[b] = true;
    }
    for (int i = 0; i < n; ++i)
      if (m1.atoms[i].element != m2.atoms[to2[i]].element) {
        problems.push_back("mapping sends an atom to a different element");
        return;
      }
    if (m1.bonds.size() != m2.bonds.size()) {
      problems.push_back("bond counts differ between the spellings");
      return;
    }
    for (const auto& b : m1.bonds) {
      const int idx = m2.bond_between(to2[b.a], to2[b.b]);
      if (idx < 0 || m2.bonds[idx].order != b.order) {
        problems.push_back("mapping breaks a bond");
        return;
      }
    }
    if (n <= 12 && !isomorphism_map(m1, m2))
      problems.push_back("exhaustive search finds no isomorphism");
    return;
  }

  if (q.category == "smiles_to_iupac" || q.category == "functional_group" ||
      q.category == "locant") {
    if (!expect_kind(Kind::IupacParsesTo, "iupac_parses_to")) return;
    const std::string key = q.answer.smiles_key;
    if (canonical_key(parse_smiles(key)) != key)
      problems.push_back("stored structure key is not canonical");
    if (q.meta.contains("smiles")) {
      const std::string smiles = q.meta.at("smiles").get<std::string>();
      if (canonical_key(parse_smiles(smiles)) != key)
        problems.push_back("prompt structure does not match the stored key");
      if (q.prompt.find(smiles) == std::string::npos)
        problems.push_back("prompt does not contain the recorded structure");
    }
    return;
  }

  if (q.category == "sar") {
    const auto& context = q.meta.at("context");
    if (context.size() != 7) {
      problems.push_back("context should hold 7 molecules");
      return;
    }
    Eigen::MatrixXd design(7, 9);
    Eigen::VectorXd y(7);
    for (int i = 0; i < 7; ++i) {
      design.row(i) =
          design_row_from_combo(context[i].at("combo").get<std::vector<int>>());
      y(i) = context[i].at("score").get<double>();
    }
    const int rank =
        static_cast<int>(Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(design).rank());
    if (rank != 7) {
      problems.push_back("design rank is " + std::to_string(rank) + ", not 7");
      return;
    }
    const Eigen::VectorXd theta =
        design.completeOrthogonalDecomposition().pseudoInverse() * y;
    const Eigen::RowVectorXd x =
        design_row_from_combo(q.meta.at("unknown").at("combo").get<std::vector<int>>());
    const double predicted = x.dot(theta);

    if (q.variant == "integer") {
      if (!expect_kind(Kind::ExactInteger, "exact_integer")) return;
      if (std::abs(predicted - static_cast<double>(q.answer.integer)) > 1e-6)
        problems.push_back("least-squares refit predicts " + std::to_string(predicted) +
                           ", answer says " + std::to_string(q.answer.integer));
    } else {
      if (!expect_kind(Kind::NumericRange, "numeric_range")) return;
      const double sigma2 = q.meta.at("sigma2").get<double>();
      const Eigen::MatrixXd pinv_ata = (design.transpose() * design)
                                           .completeOrthogonalDecomposition()
                                           .pseudoInverse();
      const double leverage = (x * pinv_ata * x.transpose()).value();
      const double spread = 1.96 * std::sqrt(sigma2 * (1.0 + leverage));
      if (std::abs(q.answer.lo - (predicted - spread)) > 1e-9 ||
          std::abs(q.answer.hi - (predicted + spread)) > 1e-9)
        problems.push_back("interval does not match the refit prediction band");
    }
    return;
  }

  if (q.category == "reaction") {
    if (!expect_kind(Kind::SmilesEquivalent, "smiles_equivalent")) return;
    const std::string product = q.meta.at("product").get<std::string>();
    if (q.answer.smiles_key != product)
      problems.push_back("answer key differs from the recorded product");
    Formula left, right;
    auto accumulate = [](Formula& into, const std::vector<std::string>& items) {
      for (const auto& s : items)
        for (const auto& [el, n] : molecular_formula(parse_smiles(s)).counts)
          into.counts[el] += n;
    };
    accumulate(left, q.meta.at("reactants").get<std::vector<std::string>>());
    accumulate(left, q.meta.at("extra_reactants").get<std::vector<std::string>>());
    accumulate(right, {product});
    accumulate(right, q.meta.at("byproducts").get<std::vector<std::string>>());
    accumulate(right, q.meta.at("catalysts").get<std::vector<std::string>>());
    if (!(left == right))
      problems.push_back("atoms are not conserved: " + left.hill() + " vs " +
                         right.hill());
    return;
  }

  if (q.category == "nmr_elucidation") {
    if (!expect_kind(Kind::SmilesEquivalent, "smiles_equivalent")) return;
    const Molecule m = parse_smiles(q.meta.at("smiles").get<std::string>());
    if (canonical_key(m) != q.answer.smiles_key)
      problems.push_back("stored structure does not match the answer key");
    const std::string stated = formula_from_prompt(q.prompt);
    if (stated.empty())
      problems.push_back("prompt has no formula line");
    else if (stated != molecular_formula(m).hill())
      problems.push_back("prompt formula " + stated + " is not the structure's " +
                         molecular_formula(m).hill());
    return;
  }

  problems.push_back("unknown category");
}

}  // namespace

VerifyReport verify_questions(const std::vector<QuestionInstance>& questions,
                              int coverage_instances, uint64_t coverage_seed) {
  VerifyReport report;
  std::set<std::string> ids;
  bool has_sar = false;

  for (const auto& q : questions) {
    std::vector<std::string> problems;
    if (!ids.insert(q.id).second) problems.push_back("duplicate question id");
    if (q.prompt.empty()) problems.push_back("empty prompt");
    if (q.category == "sar") has_sar = true;
    try {
      check_question(q, problems);
    } catch (const std::exception& e) {
      problems.push_back(std::string("audit failed: ") + e.what());
    }
    for (const auto& p : problems) report.issues.push_back({q.id, p});
    ++report.checked;
  }

  if (coverage_instances > 0 && has_sar) {
    report.sar_coverage = sar_noise_coverage(coverage_instances, coverage_seed);
    if (report.sar_coverage < 0.93 || report.sar_coverage > 0.97)
      report.issues.push_back(
          {"sar-noise", "interval coverage " + std::to_string(report.sar_coverage) +
                            " is outside [0.93, 0.97]"});
  }
  return report;
}

int cmd_verify(const RunConfig& cfg, const VerifyArgs& args, std::ostream& log) {
  const std::string qpath = args.questions.empty() ? questions_path(cfg) : args.questions;
  const auto questions = load_questions(qpath);
  const auto report = verify_questions(questions, args.coverage_instances, cfg.seed);

  log << "verified " << report.checked << " questions from " << qpath << "\n";
  if (report.sar_coverage >= 0.0) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", report.sar_coverage);
    log << "noise interval coverage: " << buf << " over " << args.coverage_instances
        << " fresh instances\n";
  }
  constexpr size_t kMaxShown = 25;
  for (size_t i = 0; i < report.issues.size() && i < kMaxShown; ++i)
    log << "  " << report.issues[i].question_id << ": " << report.issues[i].what << "\n";
  if (report.issues.size() > kMaxShown)
    log << "  ... and " << report.issues.size() - kMaxShown << " more\n";
  log << (report.issues.empty() ? "all checks passed" : "FOUND PROBLEMS") << "\n";
  return report.issues.empty() ? 0 : 1;
}

}  // namespace chemiq
