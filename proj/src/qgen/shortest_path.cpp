#include <stdexcept>

#include "chemiq/qgen.hpp"
#include "qgen_detail.hpp"

namespace chemiq {

namespace {

const char* kPathPrompt =
    "Determine the number of bonds along the shortest path connecting the two dummy "
    "atoms (denoted by '*'). Count each bond equally, including those directly attached "
    "to the dummy atoms.";

// Anchor pairs with a spare hydrogen on both ends at the requested topological
// distance.
std::vector<std::pair<int, int>> anchor_pairs(const Molecule& m, int distance) {
    std::vector<std::pair<int, int>> pairs;
    const int n = static_cast<int>(m.atoms.size());
    for (int a = 0; a < n; ++a) {
        if (m.atoms[a].h_count < 1) continue;
        for (int b = a + 1; b < n; ++b) {
            if (m.atoms[b].h_count < 1) continue;
            if (shortest_path_bonds(m, a, b) == distance) pairs.emplace_back(a, b);
        }
    }
    return pairs;
}

Molecule add_marker(Molecule m, int site) {
    m.atoms[site].h_count -= 1;
    const int marker = m.add_atom(Atom{"*", false, 0, 0, 0});
    m.add_bond(site, marker, BondOrder::Single);
    return m;
}

void check_spelling(const std::string& smiles, int expected) {
    const Molecule m = parse_smiles(smiles);
    std::vector<int> markers;
    for (size_t i = 0; i < m.atoms.size(); ++i)
        if (m.atoms[i].element == "*") markers.push_back(static_cast<int>(i));
    if (markers.size() != 2)
        throw std::logic_error("path spelling lost its markers: " + smiles);
    if (shortest_path_bonds(m, markers[0], markers[1]) != expected)
        throw std::logic_error("path distance mismatch for " + smiles);
}

}  // namespace

std::vector<QuestionInstance> gen_shortest_path(const Corpus& corpus, RandomSource rng) {
    struct Dumbbell {
        Molecule mol;
        int answer = 0;
    };
    std::vector<Dumbbell> dumbbells;

    for (int answer = 3; answer <= 20; ++answer) {
        const int heavy_distance = answer - 2;  // two marker bonds complete the path
        for (int k = 0; k < 3; ++k) {
            constexpr int kMaxAttempts = 100000;
            int attempt = 0;
            for (;; ++attempt) {
                if (attempt == kMaxAttempts)
                    throw std::runtime_error("no molecule offers a pair at distance " +
                                             std::to_string(heavy_distance));
                const CorpusEntry& entry =
                    corpus.entries[rng.uniform_below(static_cast<int>(corpus.entries.size()))];
                auto pairs = anchor_pairs(entry.mol, heavy_distance);
                if (pairs.empty()) continue;
                auto [a, b] = pairs[rng.uniform_below(static_cast<int>(pairs.size()))];
                dumbbells.push_back({add_marker(add_marker(entry.mol, a), b), answer});
                break;
            }
        }
    }

    std::vector<QuestionInstance> out;
    auto emit = [&](const std::string& variant, const std::string& smiles, int answer, int n) {
        check_spelling(smiles, answer);
        QuestionInstance q;
        q.id = detail::question_id("shortest_path", variant, n);
        q.category = "shortest_path";
        q.variant = variant;
        q.prompt = std::string(kPathPrompt) + "\n\n" + smiles +
                   "\n\nGive your answer as an integer. Do not write any comments.";
        q.answer = AnswerSpec::exact_integer(answer);
        q.meta["smiles"] = smiles;
        out.push_back(std::move(q));
    };

    for (size_t i = 0; i < dumbbells.size(); ++i)
        emit("canonical", write_canonical(dumbbells[i].mol), dumbbells[i].answer,
             static_cast<int>(i) + 1);
    for (size_t i = 0; i < dumbbells.size(); ++i)
        emit("random", write_random(dumbbells[i].mol, rng), dumbbells[i].answer,
             static_cast<int>(i) + 1);
    return out;
}

}  // namespace chemiq
