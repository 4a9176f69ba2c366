#include <algorithm>
#include <charconv>
#include <regex>
#include <set>
#include <sstream>
#include <string>

#include "chemiq/grade.hpp"
#include "chemiq/molgraph.hpp"

namespace chemiq {
namespace {

std::optional<long> parse_integer(const std::string& token) {
  std::string t = token;
  if (!t.empty() && t.front() == '+') t.erase(t.begin());
  long value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size()) return std::nullopt;
  return value;
}

std::optional<double> parse_double(const std::string& token) {
  try {
    size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::vector<std::pair<int, int>> pairs_of(const std::string& normalized) {
  static const std::regex pair_re(R"(\((\d+), (\d+)\))");
  std::vector<std::pair<int, int>> pairs;
  for (auto it = std::sregex_iterator(normalized.begin(), normalized.end(), pair_re);
       it != std::sregex_iterator(); ++it)
    pairs.emplace_back(std::stoi((*it)[1]), std::stoi((*it)[2]));
  return pairs;
}

std::string range_text(double lo, double hi) {
  std::ostringstream ss;
  ss << "[" << lo << ", " << hi << "]";
  return ss.str();
}

void grade_exact_integer(const QuestionInstance& q, GradeResult& r) {
  const auto value = parse_integer(r.extracted);
  if (!value) {
    r.detail = "candidate is not an integer";
    return;
  }
  r.verdict = (*value == q.answer.integer) ? Verdict::Correct : Verdict::Incorrect;
  r.detail = "expected " + std::to_string(q.answer.integer) + ", got " + std::to_string(*value);
}

void grade_numeric_range(const QuestionInstance& q, GradeResult& r) {
  const auto value = parse_double(r.extracted);
  if (!value) {
    r.detail = "candidate is not a number";
    return;
  }
  const bool inside = q.answer.lo <= *value && *value <= q.answer.hi;
  r.verdict = inside ? Verdict::Correct : Verdict::Incorrect;
  r.detail = "accepted range " + range_text(q.answer.lo, q.answer.hi);
}

void grade_tuple_mapping(const QuestionInstance& q, GradeResult& r) {
  const auto got = pairs_of(r.extracted);
  // all tuples must be present, in any order
  const std::set<std::pair<int, int>> expected(q.answer.tuples.begin(), q.answer.tuples.end());
  const std::set<std::pair<int, int>> actual(got.begin(), got.end());
  r.verdict = (expected == actual && got.size() == q.answer.tuples.size())
                  ? Verdict::Correct
                  : Verdict::Incorrect;
  r.detail = std::to_string(got.size()) + " tuples vs " +
             std::to_string(q.answer.tuples.size()) + " expected";
}

void grade_smiles_equivalent(const QuestionInstance& q, GradeResult& r) {
  std::string key_canonical, got_canonical;
  try {
    key_canonical = canonical_key(parse_smiles(q.answer.smiles_key));
  } catch (const std::exception& e) {
    r.verdict = Verdict::Ungraded;
    r.detail = std::string("stored key failed to parse: ") + e.what();
    return;
  }
  try {
    got_canonical = canonical_key(parse_smiles(r.extracted));
  } catch (const std::exception& e) {
    r.detail = std::string("candidate SMILES failed to parse: ") + e.what();
    return;  // unparseable, not incorrect
  }
  r.verdict = (got_canonical == key_canonical) ? Verdict::Correct : Verdict::Incorrect;
  r.detail = got_canonical + " vs " + key_canonical;
}

void grade_iupac(const QuestionInstance& q, GradeResult& r, IupacValidator* validator) {
  if (validator == nullptr) {
    r.verdict = Verdict::Ungraded;
    r.detail = "no name validator configured";
    return;
  }
  std::optional<std::string> structure;
  try {
    structure = validator->to_structure(r.extracted);
  } catch (const ValidatorUnavailable& e) {
    r.verdict = Verdict::Ungraded;
    r.detail = std::string("validator unavailable: ") + e.what();
    return;
  }
  if (!structure) {
    r.verdict = Verdict::Incorrect;
    r.detail = "name did not parse as nomenclature";
    return;
  }
  std::string key_canonical, got_canonical;
  try {
    key_canonical = canonical_key(parse_smiles(q.answer.smiles_key));
    got_canonical = canonical_key(parse_smiles(*structure));
  } catch (const std::exception& e) {
    // the service answered with something outside this toolkit's envelope
    r.verdict = Verdict::Ungraded;
    r.detail = std::string("validator structure unsupported: ") + e.what();
    return;
  }
  r.verdict = (got_canonical == key_canonical) ? Verdict::Correct : Verdict::Incorrect;
  r.detail = got_canonical + " vs " + key_canonical;
}

std::string sanitize(const std::string& s) {
  std::string out = s;
  std::replace(out.begin(), out.end(), '\n', ' ');
  std::replace(out.begin(), out.end(), '\r', ' ');
  return out;
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Correct: return "correct";
    case Verdict::Incorrect: return "incorrect";
    case Verdict::Unparseable: return "unparseable";
    case Verdict::Ungraded: return "ungraded";
  }
  return "unparseable";
}

Verdict verdict_from_name(const std::string& name) {
  if (name == "correct") return Verdict::Correct;
  if (name == "incorrect") return Verdict::Incorrect;
  if (name == "unparseable") return Verdict::Unparseable;
  if (name == "ungraded") return Verdict::Ungraded;
  throw std::invalid_argument("unknown verdict: " + name);
}

GradeResult grade_answer(const QuestionInstance& q, const std::string& response,
                         IupacValidator* validator) {
  GradeResult r;
  r.question_id = q.id;
  r.category = q.category;
  r.variant = q.variant;
  r.verdict = Verdict::Unparseable;

  const auto candidate = extract_answer(response, q.answer.kind);
  if (!candidate) {
    r.detail = "no candidate answer found";
    return r;
  }
  r.extracted = *candidate;

  switch (q.answer.kind) {
    case AnswerSpec::Kind::ExactInteger: grade_exact_integer(q, r); break;
    case AnswerSpec::Kind::NumericRange: grade_numeric_range(q, r); break;
    case AnswerSpec::Kind::TupleMapping: grade_tuple_mapping(q, r); break;
    case AnswerSpec::Kind::SmilesEquivalent: grade_smiles_equivalent(q, r); break;
    case AnswerSpec::Kind::IupacParsesTo: grade_iupac(q, r, validator); break;
  }
  return r;
}

std::vector<GradeResult> grade_batch(const std::vector<QuestionInstance>& questions,
                                     const std::map<std::string, std::string>& responses_by_id,
                                     IupacValidator* validator) {
  std::vector<GradeResult> out;
  out.reserve(questions.size());
  for (const auto& q : questions) {
    const auto it = responses_by_id.find(q.id);
    if (it == responses_by_id.end()) {
      GradeResult r;
      r.question_id = q.id;
      r.category = q.category;
      r.variant = q.variant;
      r.verdict = Verdict::Unparseable;
      r.detail = "no response recorded";
      out.push_back(std::move(r));
      continue;
    }
    out.push_back(grade_answer(q, it->second, validator));
  }
  return out;
}

std::string grades_to_csv(const std::vector<GradeResult>& results) {
  std::string out = "question_id,category,variant,verdict,extracted,detail\n";
  for (const auto& r : results) {
    out += csv_field(r.question_id) + "," + csv_field(r.category) + "," +
           csv_field(r.variant) + "," + verdict_name(r.verdict) + "," +
           csv_field(sanitize(r.extracted)) + "," + csv_field(sanitize(r.detail)) + "\n";
  }
  return out;
}

std::vector<GradeResult> grades_from_csv(const std::string& text) {
  std::vector<GradeResult> out;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (starts_with(line, "question_id,")) continue;
    }
    const auto fields = parse_csv_line(line);
    if (fields.size() < 4) throw std::runtime_error("malformed grades row: " + line);
    GradeResult r;
    r.question_id = fields[0];
    r.category = fields[1];
    r.variant = fields[2];
    r.verdict = verdict_from_name(fields[3]);
    if (fields.size() > 4) r.extracted = fields[4];
    if (fields.size() > 5) r.detail = fields[5];
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace chemiq
