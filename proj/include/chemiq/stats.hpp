#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "chemiq/grade.hpp"
#include "chemiq/llmio.hpp"

namespace chemiq {

// --- primitives --------------------------------------------------------------

struct BinomialCi {
  double rate = 0.0;        // fraction in [0, 1]
  double half_width = 0.0;  // 1.96 * sqrt(rate * (1 - rate) / n)
};

BinomialCi binomial_ci(int successes, int n);

// Exact one-tailed test on discordant pairs. Each pair is (first model
// correct, second model correct); the alternative is that the second model is
// better. With b = second-only wins and c = first-only wins,
// p = P(X >= b) for X ~ Binomial(b + c, 1/2). No discordant pairs -> p = 1.
double mcnemar_one_tailed(const std::vector<std::pair<bool, bool>>& paired);
double mcnemar_from_counts(long b, long c);

// "" / "*" / "**" / "***" for p < 0.05 / 0.01 / 0.001
std::string significance_stars(double p);

// Chance of a blind guess: counting 1/25 (carbons) and 1/6 (rings), shortest
// path 1/18, atom mapping 1/N! given the atom count, everything else 0.
double random_baseline(const std::string& category, int n_atoms = 0);

// --- report ------------------------------------------------------------------

struct ReportCell {
  int n = 0;          // graded questions (ungraded excluded)
  int successes = 0;  // verdict == correct
  int ungraded = 0;
  double rate = 0.0;
  double half_width = 0.0;
};

struct EvalReport {
  std::vector<std::string> models;  // column order as supplied

  struct Row {
    std::string category;
    std::string variant;
    double baseline = 0.0;            // fraction
    std::vector<ReportCell> cells;    // aligned to models
    std::vector<double> mcnemar_p;    // [i] compares models[i] vs models[i+1]
  };

  std::vector<Row> rows;  // fixed category order, then any extras
  Row total;
  bool mcnemar_degenerate = false;  // some pair had no discordant outcomes
  bool has_ungraded = false;

  std::map<std::string, std::vector<TokenSummary>> tokens;  // optional, by model
};

// Per-question verdicts for several models in one table. Shape:
//   model,question_id,category,variant,verdict
struct VerdictTable {
  std::vector<std::string> models;  // first-appearance order
  std::map<std::string, std::vector<GradeResult>> grades;
};

VerdictTable read_verdicts_csv(const std::string& text);

EvalReport build_report(const std::vector<std::string>& models,
                        const std::map<std::string, std::vector<GradeResult>>& grades,
                        const std::map<std::string, std::vector<TokenSummary>>& tokens = {});

std::string render_report_csv(const EvalReport& report);
std::string render_report_md(const EvalReport& report);

}  // namespace chemiq
