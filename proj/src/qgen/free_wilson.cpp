#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <Eigen/Dense>

#include "chemiq/qgen.hpp"
#include "qgen_detail.hpp"

namespace chemiq {

namespace {

// Fused bicyclic scaffold with three substitution sites; site fragments are
// drawn from three halogens, giving 27 possible molecules.
const char* kScaffold = "c12c([*:1])ccc([*:2])c1c([*:3])co2";
const std::array<const char*, 3> kSiteOptions = {"[*]F", "[*]Cl", "[*]Br"};

using Combo = std::array<int, 3>;

std::string combo_smiles(const Combo& combo) {
    std::map<int, Molecule> frags;
    for (int s = 0; s < 3; ++s) frags[s + 1] = parse_smiles(kSiteOptions[combo[s]]);
    return write_canonical(splice(parse_smiles(kScaffold), frags));
}

Eigen::RowVectorXd design_row(const Combo& combo) {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(9);
    for (int s = 0; s < 3; ++s) row(3 * s + combo[s]) = 1.0;
    return row;
}

int matrix_rank(const Eigen::MatrixXd& m) {
    return static_cast<int>(Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(m).rank());
}

std::string one_decimal(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

struct Assembly {
    std::vector<Combo> context;        // 7 rows spanning the identifiable space
    std::vector<std::string> context_smiles;
    std::vector<long> context_scores;  // noiseless sums
    Combo unknown{};
    std::string unknown_smiles;
    long unknown_score = 0;
    Eigen::MatrixXd design;  // 7 x 9
};

Assembly assemble(RandomSource& rng, bool with_smiles = true) {
    std::array<long, 9> contribution;
    for (auto& c : contribution) c = rng.uniform_int(50, 250);

    std::vector<Combo> combos;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) combos.push_back({a, b, c});
    rng.shuffle(combos);

    auto score_of = [&](const Combo& combo) {
        return contribution[combo[0]] + contribution[3 + combo[1]] + contribution[6 + combo[2]];
    };

    Assembly out;
    Eigen::MatrixXd rows(0, 9);
    std::vector<Combo> rest;
    for (const auto& combo : combos) {
        if (matrix_rank(rows) == 7) {
            rest.push_back(combo);
            continue;
        }
        Eigen::MatrixXd extended(rows.rows() + 1, 9);
        extended << rows, design_row(combo);
        if (matrix_rank(extended) > matrix_rank(rows)) {
            rows = std::move(extended);
            out.context.push_back(combo);
        } else {
            rest.push_back(combo);
        }
    }
    if (out.context.size() != 7 || matrix_rank(rows) != 7)
        throw std::logic_error("substituent design did not reach rank 7");

    out.design = rows;
    for (const auto& combo : out.context) {
        if (with_smiles) out.context_smiles.push_back(combo_smiles(combo));
        out.context_scores.push_back(score_of(combo));
    }
    out.unknown = rest[rng.uniform_below(static_cast<int>(rest.size()))];
    if (with_smiles) out.unknown_smiles = combo_smiles(out.unknown);
    out.unknown_score = score_of(out.unknown);

    // The unknown must be identifiable: a least-squares fit of the noiseless
    // scores has to reproduce the additive sum exactly.
    Eigen::VectorXd y(7);
    for (int i = 0; i < 7; ++i) y(i) = static_cast<double>(out.context_scores[i]);
    Eigen::VectorXd theta = out.design.completeOrthogonalDecomposition().pseudoInverse() * y;
    const double predicted = design_row(out.unknown).dot(theta);
    if (std::abs(predicted - static_cast<double>(out.unknown_score)) > 1e-6)
        throw std::logic_error("least-squares fit disagrees with the additive score");

    return out;
}

std::string table_prompt(const Assembly& a, const std::vector<std::string>& rendered_scores) {
    std::string prompt = "Determine the score of the unknown molecule.\n\nIndex SMILES Score\n";
    for (int i = 0; i < 7; ++i) {
        prompt += std::to_string(i);
        prompt += ' ';
        prompt += a.context_smiles[i];
        prompt += ' ';
        prompt += rendered_scores[i];
        prompt += '\n';
    }
    prompt += "\nUnknown molecule: " + a.unknown_smiles +
              "\n\nWrite your answer as an integer only. Do not write any comments.";
    return prompt;
}

nlohmann::ordered_json assembly_meta(const Assembly& a,
                                     const std::vector<double>& used_scores) {
    nlohmann::ordered_json meta;
    auto rows = nlohmann::ordered_json::array();
    for (int i = 0; i < 7; ++i) {
        nlohmann::ordered_json row;
        row["smiles"] = a.context_smiles[i];
        row["combo"] = a.context[i];
        row["score"] = used_scores[i];
        rows.push_back(std::move(row));
    }
    meta["context"] = std::move(rows);
    meta["unknown"] = {{"smiles", a.unknown_smiles},
                       {"combo", nlohmann::ordered_json(a.unknown)}};
    return meta;
}

}  // namespace

std::vector<QuestionInstance> gen_sar(RandomSource rng) {
    std::vector<QuestionInstance> out;

    for (int k = 0; k < 20; ++k) {
        Assembly a = assemble(rng);
        std::vector<std::string> rendered;
        std::vector<double> used;
        for (long s : a.context_scores) {
            rendered.push_back(std::to_string(s));
            used.push_back(static_cast<double>(s));
        }

        QuestionInstance q;
        q.id = detail::question_id("sar", "integer", k + 1);
        q.category = "sar";
        q.variant = "integer";
        q.prompt = table_prompt(a, rendered);
        q.answer = AnswerSpec::exact_integer(a.unknown_score);
        q.meta = assembly_meta(a, used);
        out.push_back(std::move(q));
    }

    constexpr double kSigma2 = 2.0;
    for (int k = 0; k < 20; ++k) {
        Assembly a = assemble(rng);
        std::vector<std::string> rendered;
        std::vector<double> used;
        for (long s : a.context_scores) {
            const std::string shown = one_decimal(static_cast<double>(s) +
                                                  rng.gaussian(0.0, std::sqrt(kSigma2)));
            rendered.push_back(shown);
            used.push_back(std::stod(shown));
        }

        // 95% prediction interval around the fit of the displayed scores
        Eigen::VectorXd y(7);
        for (int i = 0; i < 7; ++i) y(i) = used[i];
        const Eigen::MatrixXd pinv_ata =
            (a.design.transpose() * a.design).completeOrthogonalDecomposition().pseudoInverse();
        const Eigen::VectorXd theta =
            a.design.completeOrthogonalDecomposition().pseudoInverse() * y;
        const Eigen::RowVectorXd x = design_row(a.unknown);
        const double predicted = x.dot(theta);
        const double leverage = (x * pinv_ata * x.transpose()).value();
        const double spread = 1.96 * std::sqrt(kSigma2 * (1.0 + leverage));
        if (!(spread > 0.0) || !std::isfinite(spread))
            throw std::logic_error("degenerate prediction interval");

        QuestionInstance q;
        q.id = detail::question_id("sar", "noise", k + 1);
        q.category = "sar";
        q.variant = "noise";
        q.prompt = table_prompt(a, rendered);
        q.answer = AnswerSpec::numeric_range(predicted - spread, predicted + spread);
        q.meta = assembly_meta(a, used);
        q.meta["sigma2"] = kSigma2;
        out.push_back(std::move(q));
    }

    return out;
}

double sar_noise_coverage(int instances, uint64_t seed) {
    if (instances <= 0) throw std::invalid_argument("coverage needs instances");
    constexpr double kSigma2 = 2.0;
    RandomSource rng(seed);
    int covered = 0;
    for (int k = 0; k < instances; ++k) {
        Assembly a = assemble(rng, /*with_smiles=*/false);

        // Same table the question would show: noisy scores, one decimal.
        Eigen::VectorXd y(7);
        for (int i = 0; i < 7; ++i) {
            const std::string shown = one_decimal(static_cast<double>(a.context_scores[i]) +
                                                  rng.gaussian(0.0, std::sqrt(kSigma2)));
            y(i) = std::stod(shown);
        }

        const Eigen::MatrixXd pinv_ata =
            (a.design.transpose() * a.design).completeOrthogonalDecomposition().pseudoInverse();
        const Eigen::VectorXd theta =
            a.design.completeOrthogonalDecomposition().pseudoInverse() * y;
        const Eigen::RowVectorXd x = design_row(a.unknown);
        const double predicted = x.dot(theta);
        const double spread =
            1.96 * std::sqrt(kSigma2 * (1.0 + (x * pinv_ata * x.transpose()).value()));

        // A fresh noisy observation of the unknown, which is what a 95%
        // prediction interval is supposed to catch.
        const double observed =
            static_cast<double>(a.unknown_score) + rng.gaussian(0.0, std::sqrt(kSigma2));
        if (observed >= predicted - spread && observed <= predicted + spread) ++covered;
    }
    return static_cast<double>(covered) / instances;
}

}  // namespace chemiq
