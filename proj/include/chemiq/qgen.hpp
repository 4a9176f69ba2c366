#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "chemiq/ingest.hpp"
#include "chemiq/molgraph.hpp"
#include "chemiq/util.hpp"

namespace chemiq {

// --- answer specifications ---------------------------------------------------

// What counts as a correct answer, in a form the grader can apply without
// re-running the generator.
struct AnswerSpec {
  enum class Kind {
    ExactInteger,      // extracted integer must match exactly
    TupleMapping,      // index pairs must match as a set
    SmilesEquivalent,  // extracted SMILES must share the stored canonical key
    IupacParsesTo,     // name must parse (external tool) to the stored key
    NumericRange,      // extracted number must land inside [lo, hi]
  };

  Kind kind = Kind::ExactInteger;
  long integer = 0;
  std::vector<std::pair<int, int>> tuples;
  std::string smiles_key;
  double lo = 0.0;
  double hi = 0.0;

  static AnswerSpec exact_integer(long value);
  static AnswerSpec tuple_mapping(std::vector<std::pair<int, int>> tuples);
  static AnswerSpec smiles_equivalent(std::string key);
  static AnswerSpec iupac_parses_to(std::string key);
  static AnswerSpec numeric_range(double lo, double hi);

  nlohmann::ordered_json to_json() const;
  static AnswerSpec from_json(const nlohmann::ordered_json& j);

  bool operator==(const AnswerSpec& other) const;
};

struct QuestionInstance {
  std::string id;        // "<category>-<variant>-NNN", hyphenated
  std::string category;  // e.g. "atom_mapping"
  std::string variant;   // e.g. "semi_canonical"; empty when the category has one form
  std::string prompt;
  AnswerSpec answer;
  uint64_t seed = 0;               // suite seed the instance was generated under
  nlohmann::ordered_json meta;     // audit payload consumed by `verify`

  nlohmann::ordered_json to_json() const;
  static QuestionInstance from_json(const nlohmann::ordered_json& j);
};

// JSONL, one question per line, stable field order.
std::string questions_to_jsonl(const std::vector<QuestionInstance>& questions);
std::vector<QuestionInstance> questions_from_jsonl(const std::string& text);
void save_questions(const std::string& path, const std::vector<QuestionInstance>& questions);
std::vector<QuestionInstance> load_questions(const std::string& path);

// --- template library --------------------------------------------------------

struct ReactionTemplate {
  std::string name;
  // Outer vector: prompt operands joined with " + "; inner: dot-joined
  // components, kept in written order so catalysts stay in front.
  std::vector<std::vector<std::string>> reactants;
  std::string product;
  std::vector<std::string> byproducts;
  std::vector<std::string> catalysts;        // appear in reactants, recovered unchanged
  std::vector<std::string> extra_reactants;  // consumed but not shown in the prompt
  std::map<int, std::string> slots;          // attachment class -> fragment pool
};

struct FunctionalGroup {
  std::string name;
  std::string category;
  std::string smiles;  // fragment with one dummy attachment point
};

struct LocantScaffold {
  std::string name;
  std::string smiles;
};

struct TemplateLibrary {
  std::vector<ReactionTemplate> reactions;
  std::map<std::string, std::vector<std::string>> fragments;
  std::vector<FunctionalGroup> functional_groups;
  std::vector<LocantScaffold> locant_scaffolds;
};

TemplateLibrary load_templates(const std::string& path);

// --- molecule assembly -------------------------------------------------------

// Bonds the fragment's attachment atom (the sole neighbor of its single dummy)
// to base atom `site` with a single bond, consuming one hydrogen at the site.
// Base atoms keep their indices; fragment atoms follow.
Molecule attach(const Molecule& base, int site, const Molecule& fragment);

// Replaces every dummy atom carrying an attachment class with the mapped
// fragment. Pattern atoms keep their relative order at the front of the
// result. Throws when a class has no fragment or a fragment lacks a dummy.
Molecule splice(const Molecule& pattern, const std::map<int, Molecule>& by_class);

// --- generators --------------------------------------------------------------

struct SuiteInputs {
  const Corpus* corpus = nullptr;
  const TemplateLibrary* templates = nullptr;
  const std::vector<SmallNmrEntry>* small_nmr = nullptr;
  const std::vector<SpectraSet>* nmr_docs = nullptr;  // in filename order
};

std::vector<QuestionInstance> gen_counting_carbon(const Corpus& corpus, RandomSource rng);
std::vector<QuestionInstance> gen_counting_ring(const Corpus& corpus, RandomSource rng);
std::vector<QuestionInstance> gen_shortest_path(const Corpus& corpus, RandomSource rng);
std::vector<QuestionInstance> gen_atom_mapping(const Corpus& corpus, RandomSource rng);
std::vector<QuestionInstance> gen_smiles_to_iupac(const Corpus& corpus, RandomSource rng);
std::vector<QuestionInstance> gen_functional_group(const TemplateLibrary& lib, RandomSource rng);
std::vector<QuestionInstance> gen_locant(const TemplateLibrary& lib, RandomSource rng);
std::vector<QuestionInstance> gen_sar(RandomSource rng);
std::vector<QuestionInstance> gen_reaction(const TemplateLibrary& lib, RandomSource rng);
std::vector<QuestionInstance> gen_nmr(const std::vector<SmallNmrEntry>& small,
                                      const std::vector<SpectraSet>& docs);

// The default suite in report order; every instance re-checked against an
// independent oracle before it is returned.
std::vector<QuestionInstance> generate_suite(const SuiteInputs& inputs, uint64_t seed);

// Single category with the same per-category stream as generate_suite, so a
// subset run reproduces the matching slice of the full suite. Knows the extra
// naming families ("functional_group", "locant") as well.
std::vector<QuestionInstance> generate_category(const SuiteInputs& inputs, uint64_t seed,
                                                const std::string& category);

// A response string the grader accepts for this answer, used to close the
// loop in replay tests. Name questions get the stored structure back rather
// than a name, so they only grade correct through a validator that resolves
// that exact text.
std::string reference_answer_text(const AnswerSpec& spec);

// Monte-Carlo audit of the noisy substituent-table intervals: regenerates
// `instances` fresh designs, draws one new noisy observation of each unknown,
// and returns the fraction the 95% prediction interval catches. Should sit
// near 0.95.
double sar_noise_coverage(int instances, uint64_t seed);

// Prompt-side spectrum rendering, shared with tests.
std::string render_h1_line(const std::vector<H1Signal>& signals);
std::string render_c13_line(const std::vector<C13Signal>& signals);
std::string render_2d_line(const std::string& label, const std::vector<Peak2D>& peaks);

}  // namespace chemiq
