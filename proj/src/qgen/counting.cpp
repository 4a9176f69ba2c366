#include <map>
#include <stdexcept>

#include "chemiq/qgen.hpp"
#include "qgen_detail.hpp"

namespace chemiq {

namespace {

const char* kCountingTail = "\n\nGive your answer as an integer. Do not write any comments.";

int draw_from(std::vector<int>& pool, RandomSource& rng) {
    const int at = rng.uniform_below(static_cast<int>(pool.size()));
    const int value = pool[at];
    pool.erase(pool.begin() + at);
    return value;
}

}  // namespace

std::vector<QuestionInstance> gen_counting_carbon(const Corpus& corpus, RandomSource rng) {
    std::map<int, std::vector<int>> by_count;
    for (size_t i = 0; i < corpus.entries.size(); ++i) {
        const int c = count_carbons(corpus.entries[i].mol);
        if (c >= 3 && c <= 27) by_count[c].push_back(static_cast<int>(i));
    }

    std::vector<QuestionInstance> out;
    int n = 0;
    for (int c = 3; c <= 27; ++c) {
        auto& pool = by_count[c];
        if (pool.size() < 2)
            throw std::runtime_error("corpus lacks molecules with " + std::to_string(c) +
                                     " carbons");
        for (int k = 0; k < 2; ++k) {
            const CorpusEntry& entry = corpus.entries[draw_from(pool, rng)];
            if (count_carbons(parse_smiles(entry.canonical)) != c)
                throw std::logic_error("carbon recount mismatch for " + entry.canonical);

            QuestionInstance q;
            q.id = detail::question_id("counting_carbon", "", ++n);
            q.category = "counting_carbon";
            q.prompt = "How many carbon atoms are in the molecule:\n\n" + entry.canonical +
                       kCountingTail;
            q.answer = AnswerSpec::exact_integer(c);
            q.meta["smiles"] = entry.canonical;
            out.push_back(std::move(q));
        }
    }
    return out;
}

std::vector<QuestionInstance> gen_counting_ring(const Corpus& corpus, RandomSource rng) {
    std::map<int, std::vector<int>> by_count;
    for (size_t i = 0; i < corpus.entries.size(); ++i) {
        const int r = count_rings(corpus.entries[i].mol);
        if (r >= 1 && r <= 6) by_count[r].push_back(static_cast<int>(i));
    }

    std::vector<QuestionInstance> out;
    int n = 0;
    for (int r = 1; r <= 6; ++r) {
        auto& pool = by_count[r];
        if (pool.size() < 8)
            throw std::runtime_error("corpus lacks molecules with " + std::to_string(r) +
                                     " rings");
        for (int k = 0; k < 8; ++k) {
            const CorpusEntry& entry = corpus.entries[draw_from(pool, rng)];
            if (count_rings(parse_smiles(entry.canonical)) != r)
                throw std::logic_error("ring recount mismatch for " + entry.canonical);

            QuestionInstance q;
            q.id = detail::question_id("counting_ring", "", ++n);
            q.category = "counting_ring";
            q.prompt = "How many rings are in the molecule:\n\n" + entry.canonical +
                       kCountingTail;
            q.answer = AnswerSpec::exact_integer(r);
            q.meta["smiles"] = entry.canonical;
            out.push_back(std::move(q));
        }
    }
    return out;
}

}  // namespace chemiq
