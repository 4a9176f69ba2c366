// Acceptance harness: one line per criterion, PASS or FAIL, exit 0 only when
// every criterion holds. Each check re-derives its expectation from scratch
// rather than trusting the code under test.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chemiq/cli.hpp"
#include "chemiq/grade.hpp"
#include "chemiq/ingest.hpp"
#include "chemiq/llmio.hpp"
#include "chemiq/molgraph.hpp"
#include "chemiq/qgen.hpp"
#include "chemiq/stats.hpp"
#include "chemiq/util.hpp"

using namespace chemiq;
namespace fs = std::filesystem;

namespace {

std::string g_source_dir;

struct Outcome {
  bool ok = false;
  std::string note;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f s", s);
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct SharedState {
  Corpus corpus;
  TemplateLibrary templates;
  std::vector<SmallNmrEntry> small_nmr;
  std::vector<SpectraSet> nmr_docs;
  std::vector<QuestionInstance> suite;
  double generation_seconds = 0.0;

  SuiteInputs inputs() const {
    return SuiteInputs{&corpus, &templates, &small_nmr, &nmr_docs};
  }
};

void load_shared(SharedState& st) {
  st.corpus = load_corpus(g_source_dir + "/data/corpus_demo.smi", {});
  st.templates = load_templates(g_source_dir + "/data/templates.json");
  st.small_nmr = load_small_nmr(g_source_dir + "/data/nmr_small.txt");
  std::vector<std::string> paths;
  for (const auto& e : fs::directory_iterator(g_source_dir + "/data/nmr_zinc2d"))
    paths.push_back(e.path().string());
  std::sort(paths.begin(), paths.end());
  for (const auto& p : paths) st.nmr_docs.push_back(load_nmr_prediction_file(p));
}

// --- criterion 1: suite shape and generation speed ---------------------------

Outcome check_suite_shape(SharedState& st) {
  const auto t0 = std::chrono::steady_clock::now();
  st.suite = generate_suite(st.inputs(), 42);
  st.generation_seconds = seconds_since(t0);

  const std::map<std::pair<std::string, std::string>, int> expected = {
      {{"counting_carbon", ""}, 50},
      {{"counting_ring", ""}, 48},
      {{"shortest_path", "canonical"}, 54},
      {{"shortest_path", "random"}, 54},
      {{"atom_mapping", "semi_canonical"}, 92},
      {{"atom_mapping", "random"}, 92},
      {{"smiles_to_iupac", "zinc_canonical"}, 100},
      {{"smiles_to_iupac", "zinc_random"}, 100},
      {{"sar", "integer"}, 20},
      {{"sar", "noise"}, 20},
      {{"reaction", "synthetic_canonical"}, 45},
      {{"reaction", "synthetic_random"}, 45},
      {{"nmr_elucidation", "small"}, 46},
      {{"nmr_elucidation", "zinc_2d"}, 50},
  };
  std::map<std::pair<std::string, std::string>, int> counts;
  for (const auto& q : st.suite) counts[{q.category, q.variant}]++;

  if (st.suite.size() != 816)
    return {false, "suite holds " + std::to_string(st.suite.size()) + " questions, not 816"};
  if (counts != expected) return {false, "per-category counts are off"};
  if (st.suite.front().id != "counting_carbon-001")
    return {false, "first id is " + st.suite.front().id};
  if (st.suite.back().id != "nmr_elucidation-zinc-2d-050")
    return {false, "last id is " + st.suite.back().id};
  if (st.generation_seconds >= 120.0)
    return {false, "generation took " + fmt_seconds(st.generation_seconds)};
  return {true, "816 questions in " + fmt_seconds(st.generation_seconds)};
}

// --- criterion 2: worked grading vectors -------------------------------------

std::string tuples_text(const std::vector<std::pair<int, int>>& pairs) {
  std::string out = "[";
  for (size_t i = 0; i < pairs.size(); ++i) {
    if (i) out += ", ";
    out += "(" + std::to_string(pairs[i].first) + ", " +
           std::to_string(pairs[i].second) + ")";
  }
  return out + "]";
}

QuestionInstance spec_question(const std::string& category, AnswerSpec answer) {
  QuestionInstance q;
  q.id = category + "-001";
  q.category = category;
  q.prompt = "acceptance";
  q.answer = std::move(answer);
  return q;
}

Outcome check_grading_vectors() {
  std::vector<std::string> wrong;
  auto expect = [&](const char* label, const QuestionInstance& q,
                    const std::string& response, Verdict want) {
    const auto got = grade_answer(q, response, nullptr).verdict;
    if (got != want)
      wrong.push_back(std::string(label) + " gave " + verdict_name(got));
  };

  expect("carbon count", spec_question("counting_carbon", AnswerSpec::exact_integer(23)),
         "The total is 23", Verdict::Correct);
  expect("ring count", spec_question("counting_ring", AnswerSpec::exact_integer(6)), "6",
         Verdict::Correct);
  expect("path length", spec_question("shortest_path", AnswerSpec::exact_integer(9)),
         "The shortest path is 9", Verdict::Correct);

  const std::vector<std::pair<int, int>> mapping = {
      {0, 12}, {1, 11}, {2, 10}, {3, 15}, {4, 14}, {5, 13}, {6, 16}, {7, 9}, {8, 8},
      {9, 7},  {10, 6}, {11, 5}, {12, 3}, {13, 2}, {14, 1}, {15, 0}, {16, 4}};
  const std::vector<std::pair<int, int>> swapped = {
      {0, 14}, {1, 15}, {2, 10}, {3, 11}, {4, 12}, {5, 13}, {6, 16}, {7, 9}, {8, 8},
      {9, 7},  {10, 6}, {11, 5}, {12, 3}, {13, 2}, {14, 1}, {15, 0}, {16, 4}};
  const auto map_q =
      spec_question("atom_mapping", AnswerSpec::tuple_mapping(mapping));
  expect("mapping (as printed)", map_q, tuples_text(mapping), Verdict::Correct);
  expect("mapping (direction flipped)", map_q, tuples_text(swapped), Verdict::Incorrect);

  // the additive-model table: the fit must predict exactly 576 for (F, Cl, Br)
  const std::vector<std::array<int, 3>> combos = {
      {2, 2, 0}, {2, 0, 1}, {1, 2, 1}, {0, 2, 1}, {2, 2, 2}, {0, 0, 2}, {2, 1, 0}};
  const std::vector<double> scores = {478, 279, 505, 634, 522, 539, 346};
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(7, 9);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(7);
  for (int i = 0; i < 7; ++i) {
    for (int s = 0; s < 3; ++s) a(i, 3 * s + combos[i][s]) = 1.0;
    y(i) = scores[i];
  }
  Eigen::RowVectorXd x = Eigen::RowVectorXd::Zero(9);
  x(0) = x(3 + 1) = x(6 + 2) = 1.0;
  const double predicted =
      x.dot(Eigen::VectorXd(a.completeOrthogonalDecomposition().pseudoInverse() * y));
  if (std::abs(predicted - 576.0) > 1e-9)
    wrong.push_back("table refit predicts " + std::to_string(predicted));
  expect("additive score", spec_question("sar", AnswerSpec::exact_integer(576)),
         "Answer: 576", Verdict::Correct);

  const Molecule click =
      splice(parse_smiles("[*:1]n1cc([*:2])nn1"),
             {{1, parse_smiles("[*]c1ccccc1")}, {2, parse_smiles("[*]CCCl")}});
  expect("cycloaddition product",
         spec_question("reaction", AnswerSpec::smiles_equivalent(canonical_key(click))),
         "c1ccccc1[n]2nnc(CCCl)c2", Verdict::Correct);

  expect("small spectra structure",
         spec_question("nmr_elucidation", AnswerSpec::smiles_equivalent(canonical_key(
                                              parse_smiles("CC(=O)NCCCCN")))),
         "CC(=O)NCCCCN", Verdict::Correct);
  expect("2d spectra structure",
         spec_question("nmr_elucidation",
                       AnswerSpec::smiles_equivalent(canonical_key(parse_smiles(
                           "CCCN1C(=O)c2ccccc2N(CC(=O)Nc3ccccc3)C1=O")))),
         "CCCN1C(=O)c2ccccc2N(CC(=O)Nc3ccccc3)C1=O", Verdict::Correct);

  if (!wrong.empty()) {
    std::string note = wrong[0];
    if (wrong.size() > 1) note += " (+" + std::to_string(wrong.size() - 1) + " more)";
    return {false, note};
  }
  return {true, "all worked examples grade as printed"};
}

// --- criterion 3: canonical stability under rewriting ------------------------

bool same_atom_label(const Atom& p, const Atom& q) {
  return p.element == q.element && p.aromatic == q.aromatic && p.charge == q.charge &&
         p.h_count == q.h_count;
}

// Plain backtracking isomorphism search: element-label candidates, bond
// consistency against already-placed atoms, no rank refinement anywhere.
bool plain_isomorphic(const Molecule& m1, const Molecule& m2) {
  const int n = static_cast<int>(m1.atoms.size());
  if (static_cast<int>(m2.atoms.size()) != n || m1.bonds.size() != m2.bonds.size())
    return false;
  std::vector<int> assign(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(int)> place = [&](int i) -> bool {
    if (i == n) return true;
    for (int j = 0; j < n; ++j) {
      if (used[j] || !same_atom_label(m1.atoms[i], m2.atoms[j])) continue;
      bool ok = true;
      for (int k = 0; k < i && ok; ++k) {
        const int b1 = m1.bond_between(i, k);
        const int b2 = m2.bond_between(j, assign[k]);
        if ((b1 < 0) != (b2 < 0)) ok = false;
        else if (b1 >= 0 && m1.bonds[b1].order != m2.bonds[b2].order) ok = false;
      }
      if (!ok) continue;
      assign[i] = j;
      used[j] = true;
      if (place(i + 1)) return true;
      used[j] = false;
      assign[i] = -1;
    }
    return false;
  };
  return place(0);
}

Outcome check_canonical_stability(const SharedState& st) {
  const auto t0 = std::chrono::steady_clock::now();
  RandomSource rng(20260822);

  std::vector<int> picks(st.corpus.entries.size());
  std::iota(picks.begin(), picks.end(), 0);
  rng.shuffle(picks);
  picks.resize(std::min<size_t>(picks.size(), 200));

  int rewrites = 0, cross_checked = 0;
  for (int idx : picks) {
    const CorpusEntry& entry = st.corpus.entries[idx];
    for (int k = 0; k < 50; ++k) {
      const std::string spelling = write_random(entry.mol, rng);
      const Molecule back = parse_smiles(spelling);
      if (canonical_key(back) != entry.canonical)
        return {false, entry.id + " drifts under rewrite '" + spelling + "'"};
      ++rewrites;
      if (entry.mol.atoms.size() <= 12 && k < 2) {
        if (!plain_isomorphic(normalize_aromatic(entry.mol), normalize_aromatic(back)))
          return {false, entry.id + " rewrite is not isomorphic to the original"};
        ++cross_checked;
      }
    }
  }

  const double elapsed = seconds_since(t0);
  if (elapsed >= 300.0) return {false, "took " + fmt_seconds(elapsed)};
  return {true, std::to_string(picks.size()) + " molecules, " +
                    std::to_string(rewrites) + " rewrites, " +
                    std::to_string(cross_checked) + " brute cross-checks in " +
                    fmt_seconds(elapsed)};
}

// --- criterion 4: independent graph oracles ----------------------------------

long brute_automorphisms(const Molecule& m) {
  const int n = static_cast<int>(m.atoms.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  long count = 0;
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      if (!same_atom_label(m.atoms[i], m.atoms[perm[i]])) ok = false;
    for (size_t bi = 0; bi < m.bonds.size() && ok; ++bi) {
      const Bond& b = m.bonds[bi];
      const int idx = m.bond_between(perm[b.a], perm[b.b]);
      if (idx < 0 || m.bonds[idx].order != b.order) ok = false;
    }
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

Outcome check_graph_oracles(const SharedState& st) {
  const auto t0 = std::chrono::steady_clock::now();

  // every generated question re-audited, which runs all-pairs distances over
  // each path instance along with the refits and formula accounting
  const auto audit = verify_questions(st.suite, 0, 42);
  if (!audit.issues.empty())
    return {false, audit.issues[0].question_id + ": " + audit.issues[0].what +
                       " (+" + std::to_string(audit.issues.size() - 1) + " more)"};

  int paths = 0;
  for (const auto& q : st.suite)
    if (q.category == "shortest_path") ++paths;

  // circuit rank against the cycle-space formula, components by union-find
  int ranks = 0;
  for (size_t i = 0; i < st.corpus.entries.size() && i < 1000; ++i) {
    const Molecule& m = st.corpus.entries[i].mol;
    std::vector<int> parent(m.atoms.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int components = static_cast<int>(m.atoms.size());
    for (const auto& b : m.bonds)
      if (find(b.a) != find(b.b)) {
        parent[find(b.a)] = find(b.b);
        --components;
      }
    const int expected =
        static_cast<int>(m.bonds.size()) - static_cast<int>(m.atoms.size()) + components;
    if (count_rings(m) != expected)
      return {false, st.corpus.entries[i].id + ": ring count disagrees with cycle space"};
    ++ranks;
  }

  // exhaustive automorphism counts on small molecules
  int autos = 0;
  RandomSource rng(4242);
  std::vector<int> small;
  for (size_t i = 0; i < st.corpus.entries.size(); ++i)
    if (st.corpus.entries[i].mol.atoms.size() <= 10) small.push_back(static_cast<int>(i));
  rng.shuffle(small);
  if (small.size() > 200) small.resize(200);
  if (small.size() < 50)
    return {false, "corpus offers only " + std::to_string(small.size()) +
                       " molecules with at most 10 atoms"};
  for (int idx : small) {
    const Molecule& m = st.corpus.entries[idx].mol;
    const long brute = brute_automorphisms(m);
    const long refined = automorphism_count(m, brute + 2);
    if (brute != refined)
      return {false, st.corpus.entries[idx].id + ": permutation census finds " +
                         std::to_string(brute) + ", refined search " +
                         std::to_string(refined)};
    ++autos;
  }

  return {true, std::to_string(paths) + " path instances, " + std::to_string(ranks) +
                    " ring recounts, " + std::to_string(autos) +
                    " automorphism censuses in " + fmt_seconds(seconds_since(t0))};
}

// --- criterion 5: statistical reference values -------------------------------

Outcome check_statistics() {
  const auto a = binomial_ci(10, 30);
  if (format_pct(100.0 * a.rate) != "33.3" || format_pct(100.0 * a.half_width) != "16.9")
    return {false, "10/30 renders " + format_pct(100.0 * a.rate) + " \xc2\xb1 " +
                       format_pct(100.0 * a.half_width)};
  const auto b = binomial_ci(16, 20);
  if (format_pct(100.0 * b.rate) != "80.0" || format_pct(100.0 * b.half_width) != "17.5")
    return {false, "16/20 renders " + format_pct(100.0 * b.rate) + " \xc2\xb1 " +
                       format_pct(100.0 * b.half_width)};
  const double p = mcnemar_from_counts(10, 2);
  if (std::abs(p - 79.0 / 4096.0) > 1e-12)
    return {false, "tail probability off by " + std::to_string(p - 79.0 / 4096.0)};
  if (mcnemar_from_counts(0, 0) != 1.0) return {false, "empty discordant set is not 1"};
  return {true, "interval and tail references match"};
}

// --- criterion 6: noisy interval calibration ---------------------------------

Outcome check_interval_calibration() {
  const auto t0 = std::chrono::steady_clock::now();
  const double coverage = sar_noise_coverage(5000, 42);
  if (coverage < 0.93 || coverage > 0.97) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "coverage %.4f outside [0.93, 0.97]", coverage);
    return {false, buf};
  }
  // identifiability: fresh designs across many seeds always reach rank 7 and
  // an exact noiseless refit; generation throws otherwise and the audit
  // re-checks every answer
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    const auto questions = [&] {
      RandomSource rng(seed);
      return gen_sar(rng.fork("sar"));
    }();
    const auto audit = verify_questions(questions, 0, seed);
    if (!audit.issues.empty())
      return {false, "seed " + std::to_string(seed) + ": " +
                         audit.issues[0].question_id + " " + audit.issues[0].what};
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "coverage %.4f, 50 regenerated seeds clean, %s",
                coverage, fmt_seconds(seconds_since(t0)).c_str());
  return {true, buf};
}

// --- criterion 7: deterministic end-to-end replay ----------------------------

struct TempDir {
  fs::path path;
  explicit TempDir(const char* tag) {
    std::random_device rd;
    path = fs::temp_directory_path() /
           (std::string("chemiq_accept_") + tag + "_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

Outcome check_replay() {
  const auto t0 = std::chrono::steady_clock::now();
  TempDir a("a"), b("b");

  RunConfig base;
  base.corpus_path = g_source_dir + "/data/corpus_demo.smi";
  base.templates_path = g_source_dir + "/data/templates.json";
  base.nmr_small_path = g_source_dir + "/data/nmr_small.txt";
  base.nmr_docs_dir = g_source_dir + "/data/nmr_zinc2d";
  base.seed = 42;

  std::ostringstream sink;
  auto pipeline = [&](const fs::path& out, const std::string& fixture) -> RunConfig {
    RunConfig cfg = base;
    cfg.out_dir = out.string();
    if (cmd_generate(cfg, {}, sink) != 0) throw std::runtime_error("generate failed");
    if (fixture.empty()) return cfg;
    RunArgs run;
    run.mock_fixture = fixture;
    if (cmd_run(cfg, run, sink) != 0) throw std::runtime_error("run failed");
    if (cmd_grade(cfg, {}, sink) != 0) throw std::runtime_error("grade failed");
    ReportArgs rep;
    rep.grades = {"echo=" + grades_path(cfg)};
    if (cmd_report(cfg, rep, sink) != 0) throw std::runtime_error("report failed");
    return cfg;
  };

  // fixture built from the first generation, replayed by both pipelines
  RunConfig cfg_a = pipeline(a.path, "");
  const auto questions = load_questions(questions_path(cfg_a));
  nlohmann::ordered_json fixture;
  fixture["schema"] = "chemiq-mock/1";
  auto responses = nlohmann::ordered_json::object();
  for (const auto& q : questions) {
    nlohmann::ordered_json r;
    r["output"] = "Final answer: " + reference_answer_text(q.answer);
    responses[q.id] = std::move(r);
  }
  fixture["responses"] = std::move(responses);
  const std::string fixture_path = (a.path / "fixture.json").string();
  {
    std::ofstream out(fixture_path, std::ios::binary);
    out << fixture.dump();
  }

  cfg_a = pipeline(a.path, fixture_path);
  const RunConfig cfg_b = pipeline(b.path, fixture_path);

  const std::vector<std::pair<std::string, std::string>> files = {
      {questions_path(cfg_a), questions_path(cfg_b)},
      {manifest_path(cfg_a), manifest_path(cfg_b)},
      {transcripts_path(cfg_a), transcripts_path(cfg_b)},
      {grades_path(cfg_a), grades_path(cfg_b)},
      {report_csv_path(cfg_a), report_csv_path(cfg_b)},
      {report_md_path(cfg_a), report_md_path(cfg_b)},
  };
  for (const auto& [fa, fb] : files)
    if (slurp(fa) != slurp(fb))
      return {false, fs::path(fa).filename().string() + " differs between runs"};

  // sanity on the replayed verdicts: every machine-checkable answer lands
  const auto grades = grades_from_csv(slurp(grades_path(cfg_a)));
  int correct = 0, ungraded = 0, other = 0;
  for (const auto& g : grades) {
    if (g.verdict == Verdict::Correct) ++correct;
    else if (g.verdict == Verdict::Ungraded) ++ungraded;
    else ++other;
  }
  if (grades.size() != 816 || other != 0)
    return {false, "replayed grades: " + std::to_string(correct) + " correct, " +
                       std::to_string(ungraded) + " ungraded, " +
                       std::to_string(other) + " other"};

  return {true, "both pipelines byte-identical across 6 artifacts (" +
                    std::to_string(correct) + " correct, " + std::to_string(ungraded) +
                    " name questions ungraded offline) in " +
                    fmt_seconds(seconds_since(t0))};
}

// --- criterion 8: published success table reproduction -----------------------

Outcome check_published_table() {
  const auto table = read_verdicts_csv(slurp(g_source_dir + "/data/reference_verdicts.csv"));
  const std::vector<std::string> models = {"gpt-4o", "o3-mini-low", "o3-mini-medium",
                                           "o3-mini-high"};
  if (table.models != models) return {false, "fixture model order is off"};
  const auto report = build_report(table.models, table.grades);

  struct Row {
    const char* category;
    const char* variant;
    std::array<const char*, 4> rates;
  };
  const std::vector<Row> expected = {
      {"counting_carbon", "", {"4.0", "70.0", "80.0", "92.0"}},
      {"counting_ring", "", {"45.8", "87.5", "100.0", "100.0"}},
      {"shortest_path", "canonical", {"11.1", "40.7", "70.4", "88.9"}},
      {"shortest_path", "random", {"5.6", "24.1", "37.0", "55.6"}},
      {"atom_mapping", "semi_canonical", {"0.0", "12.0", "39.1", "62.0"}},
      {"atom_mapping", "random", {"0.0", "5.4", "27.2", "50.0"}},
      {"smiles_to_iupac", "zinc_canonical", {"0.0", "10.0", "18.0", "29.0"}},
      {"smiles_to_iupac", "zinc_random", {"0.0", "8.0", "14.0", "28.0"}},
      {"sar", "integer", {"0.0", "75.0", "100.0", "100.0"}},
      {"sar", "noise", {"15.0", "65.0", "95.0", "100.0"}},
      {"reaction", "synthetic_canonical", {"17.8", "35.6", "51.1", "55.6"}},
      {"reaction", "synthetic_random", {"6.7", "33.3", "48.9", "64.4"}},
      {"nmr_elucidation", "small", {"19.6", "34.8", "65.2", "73.9"}},
      {"nmr_elucidation", "zinc_2d", {"0.0", "2.0", "2.0", "6.0"}},
  };
  if (report.rows.size() != expected.size())
    return {false, "report has " + std::to_string(report.rows.size()) + " rows"};

  int cells = 0;
  for (size_t i = 0; i < expected.size(); ++i) {
    const auto& row = report.rows[i];
    const auto& want = expected[i];
    if (row.category != want.category || row.variant != want.variant)
      return {false, "row " + std::to_string(i) + " is " + row.category + " " + row.variant};
    for (size_t m = 0; m < 4; ++m) {
      const std::string got = format_pct(100.0 * row.cells[m].rate);
      if (got != want.rates[m])
        return {false, std::string(want.category) + " " + want.variant + " / " +
                           models[m] + " renders " + got + ", published " +
                           want.rates[m]};
      ++cells;
    }
  }
  const std::array<const char*, 4> totals = {"6.9", "27.2", "43.4", "56.7"};
  for (size_t m = 0; m < 4; ++m) {
    const std::string got = format_pct(100.0 * report.total.cells[m].rate);
    if (got != totals[m])
      return {false, models[m] + " total renders " + got + ", published " + totals[m]};
    ++cells;
  }
  return {true, std::to_string(cells) + " percentage cells match to one decimal"};
}

}  // namespace

int main() {
  const char* dir = std::getenv("CHEMIQ_SOURCE_DIR");
  if (!dir) {
    std::printf("FAIL setup: CHEMIQ_SOURCE_DIR is not set\n");
    return 1;
  }
  g_source_dir = dir;
  unsetenv("CHEMIQ_VALIDATOR_URL");  // keep the replay criterion offline

  SharedState st;
  try {
    load_shared(st);
  } catch (const std::exception& e) {
    std::printf("FAIL setup: %s\n", e.what());
    return 1;
  }

  struct Criterion {
    int number;
    const char* label;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "suite shape and generation speed", [&] { return check_suite_shape(st); }},
      {2, "worked grading vectors", [] { return check_grading_vectors(); }},
      {3, "canonical stability under rewriting", [&] { return check_canonical_stability(st); }},
      {4, "independent graph oracles", [&] { return check_graph_oracles(st); }},
      {5, "statistical reference values", [] { return check_statistics(); }},
      {6, "noisy interval calibration", [] { return check_interval_calibration(); }},
      {7, "deterministic end-to-end replay", [] { return check_replay(); }},
      {8, "published success table reproduction", [] { return check_published_table(); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Outcome r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("threw: ") + e.what()};
    }
    if (!r.ok) ++failed;
    std::printf("%s criterion %d: %s%s%s\n", r.ok ? "PASS" : "FAIL", c.number, c.label,
                r.note.empty() ? "" : " -- ", r.note.c_str());
    std::fflush(stdout);
  }

  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
