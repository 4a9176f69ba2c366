#include <stdexcept>

#include "chemiq/qgen.hpp"
#include "qgen_detail.hpp"

namespace chemiq {

namespace {

const char* kDelta = "\xce\xb4";  // lowercase delta, UTF-8

const char* kSmilesTail =
    "Only write the SMILES string. Do not write stereochemistry. Do not write any comments.";

}  // namespace

std::string render_h1_line(const std::vector<H1Signal>& signals) {
    std::string line = std::string("1H NMR: ") + kDelta + ' ';
    for (size_t i = 0; i < signals.size(); ++i) {
        const H1Signal& s = signals[i];
        if (i) line += ", ";
        line += format_shift(s.shift) + " (" + s.multiplicity;
        if (!s.js.empty()) {
            line += ", J = ";
            for (size_t k = 0; k < s.js.size(); ++k) {
                if (k) line += ", ";
                line += format_shift(s.js[k]);
            }
            line += " Hz";
        }
        line += ", " + format_shift(s.integration) + "H)";
    }
    line += '.';
    return line;
}

std::string render_c13_line(const std::vector<C13Signal>& signals) {
    std::string line = std::string("13C NMR: ") + kDelta + ' ';
    for (size_t i = 0; i < signals.size(); ++i) {
        const C13Signal& s = signals[i];
        if (i) line += ", ";
        line += format_shift(s.shift) + " (" + std::to_string(s.count) + "C, " +
                s.multiplicity + ")";
    }
    line += '.';
    return line;
}

std::string render_2d_line(const std::string& label, const std::vector<Peak2D>& peaks) {
    std::string line = label + ": ";
    for (size_t i = 0; i < peaks.size(); ++i) {
        if (i) line += ", ";
        line += "(" + format_shift(peaks[i].x) + ", " + format_shift(peaks[i].y) + ")";
    }
    line += '.';
    return line;
}

std::vector<QuestionInstance> gen_nmr(const std::vector<SmallNmrEntry>& small,
                                      const std::vector<SpectraSet>& docs) {
    if (small.size() != 46)
        throw std::runtime_error("expected 46 hand-assigned records, found " +
                                 std::to_string(small.size()));
    if (docs.size() != 50)
        throw std::runtime_error("expected 50 prediction documents, found " +
                                 std::to_string(docs.size()));

    std::vector<QuestionInstance> out;

    for (size_t i = 0; i < small.size(); ++i) {
        const SmallNmrEntry& e = small[i];
        QuestionInstance q;
        q.id = detail::question_id("nmr_elucidation", "small", static_cast<int>(i) + 1);
        q.category = "nmr_elucidation";
        q.variant = "small";
        q.prompt = "Write the SMILES string of the molecule consistent with this data:\n\n"
                   "Formula: " +
                   e.formula + "\n\n" + e.h1_text + "\n\n" + e.c13_text + "\n\n" + kSmilesTail;
        q.answer = AnswerSpec::smiles_equivalent(canonical_key(parse_smiles(e.smiles)));
        q.meta["smiles"] = e.smiles;
        out.push_back(std::move(q));
    }

    const std::string h_h = std::string("(") + kDelta + "H, " + kDelta + "H)";
    const std::string h_c = std::string("(") + kDelta + "H, " + kDelta + "C)";
    for (size_t i = 0; i < docs.size(); ++i) {
        const SpectraSet& d = docs[i];
        std::vector<std::string> sections;
        sections.push_back("Write the SMILES string of the molecule consistent with this data.");
        sections.push_back("Formula: " + d.formula);
        if (!d.h1.empty()) sections.push_back(render_h1_line(d.h1));
        if (!d.c13.empty()) sections.push_back(render_c13_line(d.c13));
        if (!d.cosy.empty()) sections.push_back(render_2d_line("COSY " + h_h, d.cosy));
        if (!d.hsqc.empty()) sections.push_back(render_2d_line("HSQC " + h_c, d.hsqc));
        if (!d.hmbc.empty()) sections.push_back(render_2d_line("HMBC " + h_c, d.hmbc));
        sections.push_back(kSmilesTail);

        std::string prompt;
        for (size_t k = 0; k < sections.size(); ++k) {
            if (k) prompt += "\n\n";
            prompt += sections[k];
        }

        QuestionInstance q;
        q.id = detail::question_id("nmr_elucidation", "zinc_2d", static_cast<int>(i) + 1);
        q.category = "nmr_elucidation";
        q.variant = "zinc_2d";
        q.prompt = prompt;
        q.answer = AnswerSpec::smiles_equivalent(canonical_key(parse_smiles(d.smiles)));
        q.meta["smiles"] = d.smiles;
        out.push_back(std::move(q));
    }

    return out;
}

}  // namespace chemiq
