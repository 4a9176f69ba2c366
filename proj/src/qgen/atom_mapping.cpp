#include <map>
#include <stdexcept>

#include "chemiq/qgen.hpp"
#include "qgen_detail.hpp"

namespace chemiq {

namespace {

// The mapping between two spellings, as (index in first, index in second)
// pairs ordered by the first index. Cross-checked structurally before use.
std::vector<std::pair<int, int>> mapping_between(const std::string& s1, const std::string& s2) {
    const Molecule m1 = parse_smiles(s1);
    const Molecule m2 = parse_smiles(s2);
    auto iso = isomorphism_map(m1, m2);
    if (!iso) throw std::logic_error("spellings are not isomorphic: " + s1 + " / " + s2);

    const auto& to_m1 = *iso;  // for each atom of m2, its atom in m1
    std::vector<bool> seen(m1.atoms.size(), false);
    for (int i : to_m1) {
        if (i < 0 || i >= static_cast<int>(m1.atoms.size()) || seen[i])
            throw std::logic_error("mapping is not a bijection for " + s1);
        seen[i] = true;
    }
    for (const auto& b : m2.bonds) {
        const int bond = m1.bond_between(to_m1[b.a], to_m1[b.b]);
        if (bond == -1 || m1.bonds[bond].order != b.order)
            throw std::logic_error("mapping breaks a bond for " + s1);
    }

    std::vector<std::pair<int, int>> tuples(m2.atoms.size());
    for (size_t j = 0; j < to_m1.size(); ++j)
        tuples[to_m1[j]] = {to_m1[j], static_cast<int>(j)};
    return tuples;
}

}  // namespace

std::vector<QuestionInstance> gen_atom_mapping(const Corpus& corpus, RandomSource rng) {
    // Unambiguous molecules only: a non-trivial automorphism would make several
    // mappings equally correct.
    std::map<int, std::vector<int>> by_heavy;
    for (size_t i = 0; i < corpus.entries.size(); ++i) {
        const int h = corpus.entries[i].heavy;
        if (h >= 7 && h <= 25) by_heavy[h].push_back(static_cast<int>(i));
    }

    std::vector<int> chosen;
    for (int h = 7; h <= 25; ++h) {
        auto pool = by_heavy[h];
        rng.shuffle(pool);
        int taken = 0;
        for (int idx : pool) {
            if (taken == 5) break;
            if (automorphism_count(corpus.entries[idx].mol, 2) != 1) continue;
            chosen.push_back(idx);
            ++taken;
        }
    }
    if (chosen.size() < 92)
        throw std::runtime_error("corpus yields only " + std::to_string(chosen.size()) +
                                 " unambiguous molecules, need 92");
    chosen.resize(92);

    std::vector<QuestionInstance> out;
    auto emit = [&](const std::string& variant, const std::string& s1, const std::string& s2,
                    int n) {
        QuestionInstance q;
        q.id = detail::question_id("atom_mapping", variant, n);
        q.category = "atom_mapping";
        q.variant = variant;
        q.prompt =
            "You are given two SMILES strings for the same molecule. Atoms are numbered "
            "from left to right, with the first atom having index 0. Only heavy atoms are "
            "numbered and mapped.\n\nMolecule 1: " +
            s1 + "\n\nMolecule 2: " + s2 +
            "\n\nDetermine the mapping of atoms from Molecule 1 to Molecule 2. Provide "
            "your answer as a list of tuples, where each tuple contains the atom index "
            "from Molecule 1 and its corresponding atom index from Molecule 2. Only write "
            "the answer. Do not write any comments.";
        q.answer = AnswerSpec::tuple_mapping(mapping_between(s1, s2));
        q.meta["smiles1"] = s1;
        q.meta["smiles2"] = s2;
        out.push_back(std::move(q));
    };

    for (size_t i = 0; i < chosen.size(); ++i) {
        const Molecule& mol = corpus.entries[chosen[i]].mol;
        const int atoms = static_cast<int>(mol.atoms.size());
        const std::string s1 = write_rooted_canonical(mol, rng.uniform_below(atoms));
        const std::string s2 = write_rooted_canonical(mol, rng.uniform_below(atoms));
        emit("semi_canonical", s1, s2, static_cast<int>(i) + 1);
    }
    for (size_t i = 0; i < chosen.size(); ++i) {
        const Molecule& mol = corpus.entries[chosen[i]].mol;
        const std::string s1 = write_random(mol, rng);
        const std::string s2 = write_random(mol, rng);
        emit("random", s1, s2, static_cast<int>(i) + 1);
    }
    return out;
}

}  // namespace chemiq
