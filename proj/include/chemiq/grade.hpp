#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chemiq/qgen.hpp"

namespace chemiq {

// --- verdicts ----------------------------------------------------------------

enum class Verdict {
  Correct,
  Incorrect,
  Unparseable,  // no candidate answer could be extracted (or it would not parse)
  Ungraded,     // external validator unavailable; never counts as incorrect
};

std::string verdict_name(Verdict v);
Verdict verdict_from_name(const std::string& name);

struct GradeResult {
  std::string question_id;
  std::string category;
  std::string variant;
  Verdict verdict = Verdict::Unparseable;
  std::string extracted;  // candidate pulled from the response; empty when absent
  std::string detail;     // what was compared, for audits
};

// --- answer extraction -------------------------------------------------------

// Pulls the intended answer out of free-form response text. The pattern is
// keyed by what the question expects: last integer token, last numeric token,
// bracketed tuple list (possibly spanning lines, normalized to one line),
// last SMILES-looking token, or the full trailing line for names.
std::optional<std::string> extract_answer(const std::string& text, AnswerSpec::Kind kind);

// --- IUPAC name validation ---------------------------------------------------

// Transport-level failure (connection refused, timeout, 5xx). Distinct from a
// name that simply does not parse.
struct ValidatorUnavailable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Name-to-structure service. to_structure returns the parsed structure as a
// SMILES string, or nullopt when the name does not parse as nomenclature.
class IupacValidator {
 public:
  virtual ~IupacValidator() = default;
  virtual std::optional<std::string> to_structure(const std::string& name) = 0;
};

// Fixture-backed validator: known names resolve, everything else is a parse
// failure. Used by tests and for offline cache replay.
class MapIupacValidator : public IupacValidator {
 public:
  explicit MapIupacValidator(std::map<std::string, std::string> entries);
  std::optional<std::string> to_structure(const std::string& name) override;

 private:
  std::map<std::string, std::string> entries_;
};

// HTTP client for an OPSIN-style name resolution service:
//   GET {base_url}/{percent-encoded name}.smi
// 200 -> SMILES in the body, 404 -> parse failure, anything else (including
// transport errors) -> ValidatorUnavailable. Results are cached by name so
// grading reruns work offline; the cache optionally persists to a JSON file.
class HttpIupacValidator : public IupacValidator {
 public:
  explicit HttpIupacValidator(std::string base_url, std::string cache_path = {},
                              int timeout_s = 30);
  ~HttpIupacValidator() override;

  std::optional<std::string> to_structure(const std::string& name) override;
  void save_cache() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// --- grading -----------------------------------------------------------------

// Grades one response. validator may be null; name questions then come back
// ungraded. Pure given (question, response, validator contents).
GradeResult grade_answer(const QuestionInstance& q, const std::string& response,
                         IupacValidator* validator);

// Grades a batch keyed by question id. Questions with no response entry are
// unparseable (nothing to extract).
std::vector<GradeResult> grade_batch(const std::vector<QuestionInstance>& questions,
                                     const std::map<std::string, std::string>& responses_by_id,
                                     IupacValidator* validator);

// grades.csv: question id, category, variant, verdict, extracted answer.
std::string grades_to_csv(const std::vector<GradeResult>& results);
std::vector<GradeResult> grades_from_csv(const std::string& text);

}  // namespace chemiq
