#include <stdexcept>

#include "chemiq/qgen.hpp"
#include "qgen_detail.hpp"

namespace chemiq {

namespace {

struct Sample {
    const ReactionTemplate* tmpl = nullptr;
    std::map<int, Molecule> fragments;
    std::map<int, std::string> fragment_smiles;
};

// One shuffled deck per fragment pool and template; slots sharing a pool share
// the deck, so no fragment repeats anywhere within a template's samples.
std::vector<Sample> draw_samples(const ReactionTemplate& tmpl, const TemplateLibrary& lib,
                                 RandomSource& rng, int count) {
    std::map<std::string, std::vector<std::string>> decks;
    for (const auto& [cls, pool] : tmpl.slots) {
        if (!decks.count(pool)) {
            decks[pool] = lib.fragments.at(pool);
            rng.shuffle(decks[pool]);
        }
    }

    std::vector<Sample> samples;
    for (int i = 0; i < count; ++i) {
        Sample s;
        s.tmpl = &tmpl;
        for (const auto& [cls, pool] : tmpl.slots) {
            auto& deck = decks[pool];
            if (deck.empty())
                throw std::runtime_error(tmpl.name + ": fragment pool " + pool +
                                         " is too small");
            s.fragment_smiles[cls] = deck.back();
            s.fragments[cls] = parse_smiles(deck.back());
            deck.pop_back();
        }
        samples.push_back(std::move(s));
    }
    return samples;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

Formula formula_of(const std::string& smiles) { return molecular_formula(parse_smiles(smiles)); }

// Atoms entering the reaction must leave it: rendered reactants plus unwritten
// reagents against product, byproducts and recovered catalysts.
void check_accounting(const ReactionTemplate& tmpl, const std::vector<std::string>& operands,
                      const Molecule& product) {
    Formula left;
    for (const auto& op : operands) detail::add_formula(left, formula_of(op));
    for (const auto& s : tmpl.extra_reactants) detail::add_formula(left, formula_of(s));

    Formula right = molecular_formula(product);
    for (const auto& s : tmpl.byproducts) detail::add_formula(right, formula_of(s));
    for (const auto& s : tmpl.catalysts) detail::add_formula(right, formula_of(s));

    if (!(left == right))
        throw std::logic_error(tmpl.name + ": unbalanced atoms, " + left.hill() + " vs " +
                               right.hill());
}

}  // namespace

std::vector<QuestionInstance> gen_reaction(const TemplateLibrary& lib, RandomSource rng) {
    constexpr int kPerTemplate = 5;

    std::vector<Sample> samples;
    for (const auto& tmpl : lib.reactions) {
        auto drawn = draw_samples(tmpl, lib, rng, kPerTemplate);
        samples.insert(samples.end(), drawn.begin(), drawn.end());
    }

    std::vector<QuestionInstance> out;
    auto emit = [&](const std::string& variant, const Sample& s,
                    const std::vector<std::string>& operands, int n) {
        const ReactionTemplate& tmpl = *s.tmpl;
        const Molecule product = splice(parse_smiles(tmpl.product), s.fragments);
        check_accounting(tmpl, operands, product);

        QuestionInstance q;
        q.id = detail::question_id("reaction", variant, n);
        q.category = "reaction";
        q.variant = variant;
        q.prompt = "Write the product of the reaction as a SMILES string.\n\n" +
                   join(operands, " + ") +
                   "\n\nOnly write the SMILES string. Do not write any comments.";
        q.answer = AnswerSpec::smiles_equivalent(canonical_key(product));
        q.meta["template"] = tmpl.name;
        q.meta["reactants"] = operands;
        q.meta["product"] = canonical_key(product);
        q.meta["byproducts"] = tmpl.byproducts;
        q.meta["catalysts"] = tmpl.catalysts;
        q.meta["extra_reactants"] = tmpl.extra_reactants;
        out.push_back(std::move(q));
    };

    for (size_t i = 0; i < samples.size(); ++i) {
        const Sample& s = samples[i];
        std::vector<std::string> operands;
        for (const auto& components : s.tmpl->reactants) {
            std::vector<std::string> rendered;
            for (const auto& c : components)
                rendered.push_back(detail::render_component(c, s.fragments));
            operands.push_back(join(rendered, "."));
        }
        emit("synthetic_canonical", s, operands, static_cast<int>(i) + 1);
    }

    for (size_t i = 0; i < samples.size(); ++i) {
        const Sample& s = samples[i];
        std::vector<std::string> operands;
        for (const auto& components : s.tmpl->reactants) {
            const Molecule operand = splice(parse_smiles(join(components, ".")), s.fragments);
            operands.push_back(write_random(operand, rng));
        }
        emit("synthetic_random", s, operands, static_cast<int>(i) + 1);
    }

    return out;
}

}  // namespace chemiq
