#include <set>
#include <stdexcept>

#include "chemiq/qgen.hpp"
#include "qgen_detail.hpp"

namespace chemiq {

namespace {

const char* kNamePrompt = "Write the IUPAC name of this molecule:";
const char* kNameTail = "\n\nWrite the IUPAC name only. Do not write any comments.";

QuestionInstance name_question(const std::string& category, const std::string& variant, int n,
                               const std::string& smiles, const std::string& key) {
    QuestionInstance q;
    q.id = detail::question_id(category, variant, n);
    q.category = category;
    q.variant = variant;
    q.prompt = std::string(kNamePrompt) + "\n\n" + smiles + kNameTail;
    q.answer = AnswerSpec::iupac_parses_to(key);
    q.meta["smiles"] = smiles;
    return q;
}

}  // namespace

std::vector<QuestionInstance> gen_smiles_to_iupac(const Corpus& corpus, RandomSource rng) {
    auto bins = bin_by_weight(corpus, 10);

    std::vector<int> chosen;
    for (size_t b = 0; b < bins.size(); ++b) {
        auto& pool = bins[b];
        if (pool.size() < 10)
            throw std::runtime_error("weight bin " + std::to_string(b) + " holds only " +
                                     std::to_string(pool.size()) + " molecules, need 10");
        for (int k = 0; k < 10; ++k) {
            const int at = rng.uniform_below(static_cast<int>(pool.size()));
            chosen.push_back(pool[at]);
            pool.erase(pool.begin() + at);
        }
    }

    std::vector<QuestionInstance> out;
    for (size_t i = 0; i < chosen.size(); ++i) {
        const CorpusEntry& entry = corpus.entries[chosen[i]];
        out.push_back(name_question("smiles_to_iupac", "zinc_canonical",
                                    static_cast<int>(i) + 1, entry.canonical,
                                    entry.canonical));
    }
    for (size_t i = 0; i < chosen.size(); ++i) {
        const CorpusEntry& entry = corpus.entries[chosen[i]];
        out.push_back(name_question("smiles_to_iupac", "zinc_random", static_cast<int>(i) + 1,
                                    write_random(entry.mol, rng), entry.canonical));
    }
    return out;
}

std::vector<QuestionInstance> gen_functional_group(const TemplateLibrary& lib,
                                                   RandomSource rng) {
    if (lib.functional_groups.size() < 6)
        throw std::runtime_error("functional group table is too small");
    const Molecule benzene = parse_smiles("c1ccccc1");

    std::vector<QuestionInstance> out;
    std::set<std::string> seen;
    constexpr int kMaxAttempts = 10000;
    int attempt = 0;
    while (out.size() < 30) {
        if (++attempt > kMaxAttempts)
            throw std::runtime_error("cannot assemble 30 distinct substituted benzenes");

        std::vector<int> order(lib.functional_groups.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        rng.shuffle(order);

        Molecule m = benzene;
        auto names = nlohmann::ordered_json::array();
        for (int position = 0; position < 6; ++position) {
            const FunctionalGroup& g = lib.functional_groups[order[position]];
            m = attach(m, position, parse_smiles(g.smiles));
            names.push_back(g.name);
        }

        const std::string key = canonical_key(m);
        if (!seen.insert(key).second) continue;

        auto q = name_question("functional_group", "", static_cast<int>(out.size()) + 1, key,
                               key);
        q.meta["groups"] = std::move(names);
        out.push_back(std::move(q));
    }
    return out;
}

std::vector<QuestionInstance> gen_locant(const TemplateLibrary& lib, RandomSource rng) {
    const std::vector<std::string> halogens = {"[*]F", "[*]Cl", "[*]Br", "[*]I"};

    std::vector<QuestionInstance> out;
    for (const auto& scaffold : lib.locant_scaffolds) {
        const Molecule base = parse_smiles(scaffold.smiles);
        std::vector<int> sites;
        for (size_t i = 0; i < base.atoms.size(); ++i)
            if (base.atoms[i].element == "C" && base.atoms[i].h_count >= 1)
                sites.push_back(static_cast<int>(i));
        if (sites.size() < 3)
            throw std::runtime_error(scaffold.name + " offers fewer than 3 positions");

        std::set<std::string> seen;
        int emitted = 0;
        constexpr int kMaxAttempts = 10000;
        int attempt = 0;
        while (emitted < 20) {
            if (++attempt > kMaxAttempts)
                throw std::runtime_error("cannot assemble 20 distinct " + scaffold.name +
                                         " molecules");

            auto positions = sites;
            rng.shuffle(positions);
            auto kinds = halogens;
            rng.shuffle(kinds);

            Molecule m = base;
            for (int k = 0; k < 3; ++k) m = attach(m, positions[k], parse_smiles(kinds[k]));

            const std::string key = canonical_key(m);
            if (!seen.insert(key).second) continue;

            ++emitted;
            auto q = name_question("locant", scaffold.name, emitted, key, key);
            q.meta["scaffold"] = scaffold.name;
            out.push_back(std::move(q));
        }
    }
    return out;
}

}  // namespace chemiq
