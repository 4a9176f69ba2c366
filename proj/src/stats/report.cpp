#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "chemiq/stats.hpp"
#include "chemiq/util.hpp"

namespace chemiq {

namespace {

// Fixed presentation order; anything else lands below in first-seen order.
const std::vector<std::pair<std::string, std::string>> kRowOrder = {
    {"counting_carbon", ""},
    {"counting_ring", ""},
    {"shortest_path", "canonical"},
    {"shortest_path", "random"},
    {"atom_mapping", "semi_canonical"},
    {"atom_mapping", "random"},
    {"smiles_to_iupac", "zinc_canonical"},
    {"smiles_to_iupac", "zinc_random"},
    {"sar", "integer"},
    {"sar", "noise"},
    {"reaction", "synthetic_canonical"},
    {"reaction", "synthetic_random"},
    {"nmr_elucidation", "small"},
    {"nmr_elucidation", "zinc_2d"},
};

using RowKey = std::pair<std::string, std::string>;

std::string fmt_p(double p) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", p);
  return buf;
}

}  // namespace

VerdictTable read_verdicts_csv(const std::string& text) {
  VerdictTable table;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line != "model,question_id,category,variant,verdict")
        throw std::runtime_error("verdict table: unexpected header: " + line);
      continue;
    }
    auto fields = parse_csv_line(line);
    if (fields.size() != 5)
      throw std::runtime_error("verdict table: bad row: " + line);
    const std::string& model = fields[0];
    if (!table.grades.count(model)) table.models.push_back(model);
    GradeResult r;
    r.question_id = fields[1];
    r.category = fields[2];
    r.variant = fields[3];
    r.verdict = verdict_from_name(fields[4]);
    table.grades[model].push_back(std::move(r));
  }
  if (first) throw std::runtime_error("verdict table: empty input");
  return table;
}

EvalReport build_report(const std::vector<std::string>& models,
                        const std::map<std::string, std::vector<GradeResult>>& grades,
                        const std::map<std::string, std::vector<TokenSummary>>& tokens) {
  if (models.empty()) throw std::invalid_argument("build_report: no models");
  for (const auto& m : models)
    if (!grades.count(m)) throw std::invalid_argument("build_report: no grades for " + m);

  EvalReport report;
  report.models = models;
  report.tokens = tokens;

  // Row keys: the fixed order first, then whatever else shows up.
  std::vector<RowKey> keys;
  std::set<RowKey> present;
  for (const auto& m : models)
    for (const auto& r : grades.at(m)) present.insert({r.category, r.variant});
  for (const auto& k : kRowOrder)
    if (present.count(k)) keys.push_back(k);
  for (const auto& m : models) {
    for (const auto& r : grades.at(m)) {
      RowKey k{r.category, r.variant};
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
    }
  }

  // Per model: verdict by question id (for pairing) and results by row.
  std::vector<std::map<std::string, Verdict>> by_id(models.size());
  std::vector<std::map<RowKey, std::vector<Verdict>>> by_row(models.size());
  for (size_t i = 0; i < models.size(); ++i) {
    for (const auto& r : grades.at(models[i])) {
      by_id[i][r.question_id] = r.verdict;
      by_row[i][{r.category, r.variant}].push_back(r.verdict);
    }
  }

  auto make_cell = [](const std::vector<Verdict>& vs) {
    ReportCell cell;
    for (Verdict v : vs) {
      if (v == Verdict::Ungraded) {
        ++cell.ungraded;
        continue;
      }
      ++cell.n;
      if (v == Verdict::Correct) ++cell.successes;
    }
    if (cell.n > 0) {
      auto ci = binomial_ci(cell.successes, cell.n);
      cell.rate = ci.rate;
      cell.half_width = ci.half_width;
    }
    return cell;
  };

  // Pairing needs id -> row to scope the per-row tests; ids are unique suite
  // wide so the Total test just passes key = nullptr.
  std::map<std::string, RowKey> row_of;
  for (const auto& m : models)
    for (const auto& r : grades.at(m)) row_of[r.question_id] = {r.category, r.variant};

  auto pair_p = [&](size_t i, size_t j, const RowKey* key) {
    long b = 0, c = 0;
    for (const auto& [id, v1] : by_id[i]) {
      auto it = by_id[j].find(id);
      if (it == by_id[j].end()) continue;
      if (key && row_of.at(id) != *key) continue;
      Verdict v2 = it->second;
      if (v1 == Verdict::Ungraded || v2 == Verdict::Ungraded) continue;
      bool ok1 = v1 == Verdict::Correct;
      bool ok2 = v2 == Verdict::Correct;
      if (ok2 && !ok1) ++b;
      if (ok1 && !ok2) ++c;
    }
    if (b + c == 0) report.mcnemar_degenerate = true;
    return mcnemar_from_counts(b, c);
  };

  for (const auto& key : keys) {
    EvalReport::Row row;
    row.category = key.first;
    row.variant = key.second;
    row.baseline = random_baseline(key.first);
    for (size_t i = 0; i < models.size(); ++i) {
      auto it = by_row[i].find(key);
      row.cells.push_back(make_cell(it == by_row[i].end() ? std::vector<Verdict>{}
                                                          : it->second));
      if (row.cells.back().ungraded > 0) report.has_ungraded = true;
    }
    for (size_t i = 0; i + 1 < models.size(); ++i)
      row.mcnemar_p.push_back(pair_p(i, i + 1, &key));
    report.rows.push_back(std::move(row));
  }

  // Total: everything pooled. Baseline is the instance-weighted mean.
  report.total.category = "Total";
  double base_weighted = 0.0;
  int base_n = 0;
  for (const auto& row : report.rows) {
    int row_n = 0;
    for (const auto& cell : row.cells) row_n = std::max(row_n, cell.n + cell.ungraded);
    base_weighted += row.baseline * row_n;
    base_n += row_n;
  }
  report.total.baseline = base_n > 0 ? base_weighted / base_n : 0.0;
  for (size_t i = 0; i < models.size(); ++i) {
    std::vector<Verdict> all;
    for (const auto& r : grades.at(models[i])) all.push_back(r.verdict);
    report.total.cells.push_back(make_cell(all));
  }
  for (size_t i = 0; i + 1 < models.size(); ++i)
    report.total.mcnemar_p.push_back(pair_p(i, i + 1, nullptr));

  return report;
}

std::string render_report_csv(const EvalReport& report) {
  std::ostringstream out;
  out << "category,variant,baseline_pct";
  for (const auto& m : report.models)
    out << "," << m << "_n," << m << "_correct," << m << "_rate_pct," << m
        << "_ci_half_pct";
  for (size_t i = 0; i + 1 < report.models.size(); ++i)
    out << ",mcnemar_" << report.models[i + 1] << "_vs_" << report.models[i];
  out << "\n";

  auto emit = [&](const EvalReport::Row& row) {
    out << csv_field(row.category) << "," << csv_field(row.variant) << ","
        << format_pct(100.0 * row.baseline);
    for (const auto& cell : row.cells) {
      out << "," << cell.n << "," << cell.successes << ","
          << format_pct(100.0 * cell.rate) << ","
          << format_pct(100.0 * cell.half_width);
    }
    for (double p : row.mcnemar_p) out << "," << fmt_p(p);
    out << "\n";
  };

  for (const auto& row : report.rows) emit(row);
  emit(report.total);
  return out.str();
}

std::string render_report_md(const EvalReport& report) {
  std::ostringstream out;
  out << "# Success rates\n\n";
  out << "Cells are percent correct with a 95% normal-approximation interval; "
         "stars mark a one-tailed McNemar improvement over the column to the "
         "left (* p < 0.05, ** p < 0.01, *** p < 0.001).\n\n";

  out << "| Category | Baseline % |";
  for (const auto& m : report.models) out << " " << m << " |";
  out << "\n| --- | ---: |";
  for (size_t i = 0; i < report.models.size(); ++i) out << " ---: |";
  out << "\n";

  auto emit = [&](const EvalReport::Row& row) {
    std::string label = row.category;
    if (!row.variant.empty()) label += " " + row.variant;
    int attempted = 0;
    for (const auto& cell : row.cells)
      attempted = std::max(attempted, cell.n + cell.ungraded);
    out << "| " << label << " (n=" << attempted << ") | "
        << format_pct(100.0 * row.baseline) << " |";
    for (size_t i = 0; i < row.cells.size(); ++i) {
      const auto& cell = row.cells[i];
      out << " " << format_pct(100.0 * cell.rate) << " \xc2\xb1 "
          << format_pct(100.0 * cell.half_width);
      if (i > 0 && i - 1 < row.mcnemar_p.size()) {
        std::string stars = significance_stars(row.mcnemar_p[i - 1]);
        if (!stars.empty()) out << " " << stars;
      }
      out << " |";
    }
    out << "\n";
  };

  for (const auto& row : report.rows) emit(row);
  emit(report.total);

  if (report.models.size() > 1) {
    out << "\n## Adjacent-model McNemar p (one-tailed)\n\n| Category |";
    for (size_t i = 0; i + 1 < report.models.size(); ++i)
      out << " " << report.models[i + 1] << " vs " << report.models[i] << " |";
    out << "\n| --- |";
    for (size_t i = 0; i + 1 < report.models.size(); ++i) out << " ---: |";
    out << "\n";
    auto emit_p = [&](const EvalReport::Row& row) {
      std::string label = row.category;
      if (!row.variant.empty()) label += " " + row.variant;
      out << "| " << label << " |";
      for (double p : row.mcnemar_p) out << " " << fmt_p(p) << " |";
      out << "\n";
    };
    for (const auto& row : report.rows) emit_p(row);
    emit_p(report.total);
  }

  std::vector<std::string> notes;
  if (report.has_ungraded)
    notes.push_back("Ungraded responses are excluded from n and from rates.");
  if (report.mcnemar_degenerate)
    notes.push_back(
        "At least one model pair had no discordant outcomes; its p is 1 by "
        "construction.");
  if (!notes.empty()) {
    out << "\n";
    for (const auto& n : notes) out << "> " << n << "\n";
  }

  if (!report.tokens.empty()) {
    out << "\n## Token usage (mean per response)\n\n";
    out << "| Model | Category | Variant | n | Output | Reasoning |\n";
    out << "| --- | --- | --- | ---: | ---: | ---: |\n";
    for (const auto& m : report.models) {
      auto it = report.tokens.find(m);
      if (it == report.tokens.end()) continue;
      for (const auto& ts : it->second) {
        char obuf[32], rbuf[32];
        std::snprintf(obuf, sizeof(obuf), "%.1f", ts.mean_output_tokens);
        std::snprintf(rbuf, sizeof(rbuf), "%.1f", ts.mean_reasoning_tokens);
        out << "| " << m << " | " << ts.category << " | " << ts.variant << " | "
            << ts.n << " | " << obuf << " | " << rbuf << " |\n";
      }
    }
  }

  return out.str();
}

}  // namespace chemiq
