#include "chemiq/qgen.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "qgen_detail.hpp"

namespace chemiq {

using nlohmann::ordered_json;

AnswerSpec AnswerSpec::exact_integer(long value) {
    AnswerSpec a;
    a.kind = Kind::ExactInteger;
    a.integer = value;
    return a;
}

AnswerSpec AnswerSpec::tuple_mapping(std::vector<std::pair<int, int>> tuples) {
    AnswerSpec a;
    a.kind = Kind::TupleMapping;
    a.tuples = std::move(tuples);
    return a;
}

AnswerSpec AnswerSpec::smiles_equivalent(std::string key) {
    AnswerSpec a;
    a.kind = Kind::SmilesEquivalent;
    a.smiles_key = std::move(key);
    return a;
}

AnswerSpec AnswerSpec::iupac_parses_to(std::string key) {
    AnswerSpec a;
    a.kind = Kind::IupacParsesTo;
    a.smiles_key = std::move(key);
    return a;
}

AnswerSpec AnswerSpec::numeric_range(double lo, double hi) {
    AnswerSpec a;
    a.kind = Kind::NumericRange;
    a.lo = lo;
    a.hi = hi;
    return a;
}

bool AnswerSpec::operator==(const AnswerSpec& other) const {
    return kind == other.kind && integer == other.integer && tuples == other.tuples &&
           smiles_key == other.smiles_key && lo == other.lo && hi == other.hi;
}

ordered_json AnswerSpec::to_json() const {
    ordered_json j;
    switch (kind) {
        case Kind::ExactInteger:
            j["kind"] = "exact_integer";
            j["value"] = integer;
            break;
        case Kind::TupleMapping: {
            j["kind"] = "tuple_mapping";
            auto arr = ordered_json::array();
            for (const auto& [a, b] : tuples) arr.push_back({a, b});
            j["tuples"] = std::move(arr);
            break;
        }
        case Kind::SmilesEquivalent:
            j["kind"] = "smiles_equivalent";
            j["key"] = smiles_key;
            break;
        case Kind::IupacParsesTo:
            j["kind"] = "iupac_parses_to";
            j["key"] = smiles_key;
            break;
        case Kind::NumericRange:
            j["kind"] = "numeric_range";
            j["lo"] = lo;
            j["hi"] = hi;
            break;
    }
    return j;
}

AnswerSpec AnswerSpec::from_json(const ordered_json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "exact_integer") return exact_integer(j.at("value").get<long>());
    if (kind == "tuple_mapping") {
        std::vector<std::pair<int, int>> tuples;
        for (const auto& t : j.at("tuples"))
            tuples.emplace_back(t.at(0).get<int>(), t.at(1).get<int>());
        return tuple_mapping(std::move(tuples));
    }
    if (kind == "smiles_equivalent") return smiles_equivalent(j.at("key").get<std::string>());
    if (kind == "iupac_parses_to") return iupac_parses_to(j.at("key").get<std::string>());
    if (kind == "numeric_range")
        return numeric_range(j.at("lo").get<double>(), j.at("hi").get<double>());
    throw std::runtime_error("unknown answer kind: " + kind);
}

ordered_json QuestionInstance::to_json() const {
    ordered_json j;
    j["schema"] = "chemiq-question/1";
    j["id"] = id;
    j["category"] = category;
    j["variant"] = variant;
    j["prompt"] = prompt;
    j["answer"] = answer.to_json();
    j["seed"] = seed;
    j["meta"] = meta;
    return j;
}

QuestionInstance QuestionInstance::from_json(const ordered_json& j) {
    const std::string schema = j.at("schema").get<std::string>();
    if (schema != "chemiq-question/1")
        throw std::runtime_error("unsupported question schema: " + schema);
    QuestionInstance q;
    q.id = j.at("id").get<std::string>();
    q.category = j.at("category").get<std::string>();
    q.variant = j.at("variant").get<std::string>();
    q.prompt = j.at("prompt").get<std::string>();
    q.answer = AnswerSpec::from_json(j.at("answer"));
    q.seed = j.at("seed").get<uint64_t>();
    q.meta = j.at("meta");
    return q;
}

std::string questions_to_jsonl(const std::vector<QuestionInstance>& questions) {
    std::string out;
    for (const auto& q : questions) {
        out += q.to_json().dump();
        out += '\n';
    }
    return out;
}

std::vector<QuestionInstance> questions_from_jsonl(const std::string& text) {
    std::vector<QuestionInstance> out;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        try {
            out.push_back(QuestionInstance::from_json(ordered_json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error("bad question on line " + std::to_string(line_no) +
                                     ": " + e.what());
        }
    }
    return out;
}

void save_questions(const std::string& path, const std::vector<QuestionInstance>& questions) {
    write_text_file(path, questions_to_jsonl(questions));
}

std::vector<QuestionInstance> load_questions(const std::string& path) {
    return questions_from_jsonl(read_text_file(path));
}

namespace detail {

std::string question_id(const std::string& category, const std::string& variant, int n) {
    std::string tag = category;
    if (!variant.empty()) {
        std::string v = variant;
        for (auto& c : v)
            if (c == '_') c = '-';
        tag += '-';
        tag += v;
    }
    char num[8];
    std::snprintf(num, sizeof num, "%03d", n);
    return tag + '-' + num;
}

}  // namespace detail

namespace {

void check_block(const std::vector<QuestionInstance>& block, const std::string& category,
                 size_t expected) {
    if (block.size() != expected)
        throw std::logic_error(category + ": generated " + std::to_string(block.size()) +
                               " questions, expected " + std::to_string(expected));
    for (const auto& q : block)
        if (q.category != category)
            throw std::logic_error("instance " + q.id + " claims category " + q.category +
                                   " inside the " + category + " block");
}

void require_inputs(const SuiteInputs& inputs, bool need_corpus, bool need_templates,
                    bool need_nmr) {
    if (need_corpus && !inputs.corpus) throw std::invalid_argument("corpus input missing");
    if (need_templates && !inputs.templates)
        throw std::invalid_argument("template library input missing");
    if (need_nmr && (!inputs.small_nmr || !inputs.nmr_docs))
        throw std::invalid_argument("NMR inputs missing");
}

}  // namespace

std::vector<QuestionInstance> generate_suite(const SuiteInputs& inputs, uint64_t seed) {
    require_inputs(inputs, true, true, true);
    RandomSource rng(seed);

    std::vector<QuestionInstance> suite;
    auto add = [&](std::vector<QuestionInstance> block, const std::string& category,
                   size_t expected) {
        check_block(block, category, expected);
        for (auto& q : block) {
            q.seed = seed;
            suite.push_back(std::move(q));
        }
    };

    add(gen_counting_carbon(*inputs.corpus, rng.fork("counting_carbon")), "counting_carbon", 50);
    add(gen_counting_ring(*inputs.corpus, rng.fork("counting_ring")), "counting_ring", 48);
    add(gen_shortest_path(*inputs.corpus, rng.fork("shortest_path")), "shortest_path", 108);
    add(gen_atom_mapping(*inputs.corpus, rng.fork("atom_mapping")), "atom_mapping", 184);
    add(gen_smiles_to_iupac(*inputs.corpus, rng.fork("smiles_to_iupac")), "smiles_to_iupac", 200);
    add(gen_sar(rng.fork("sar")), "sar", 40);
    add(gen_reaction(*inputs.templates, rng.fork("reaction")), "reaction", 90);
    add(gen_nmr(*inputs.small_nmr, *inputs.nmr_docs), "nmr_elucidation", 96);

    if (suite.size() != 816)
        throw std::logic_error("suite has " + std::to_string(suite.size()) +
                               " questions, expected 816");
    return suite;
}

std::vector<QuestionInstance> generate_category(const SuiteInputs& inputs, uint64_t seed,
                                                const std::string& category) {
    RandomSource rng(seed);
    std::vector<QuestionInstance> block;

    if (category == "counting_carbon") {
        require_inputs(inputs, true, false, false);
        block = gen_counting_carbon(*inputs.corpus, rng.fork(category));
    } else if (category == "counting_ring") {
        require_inputs(inputs, true, false, false);
        block = gen_counting_ring(*inputs.corpus, rng.fork(category));
    } else if (category == "shortest_path") {
        require_inputs(inputs, true, false, false);
        block = gen_shortest_path(*inputs.corpus, rng.fork(category));
    } else if (category == "atom_mapping") {
        require_inputs(inputs, true, false, false);
        block = gen_atom_mapping(*inputs.corpus, rng.fork(category));
    } else if (category == "smiles_to_iupac") {
        require_inputs(inputs, true, false, false);
        block = gen_smiles_to_iupac(*inputs.corpus, rng.fork(category));
    } else if (category == "functional_group") {
        require_inputs(inputs, false, true, false);
        block = gen_functional_group(*inputs.templates, rng.fork(category));
    } else if (category == "locant") {
        require_inputs(inputs, false, true, false);
        block = gen_locant(*inputs.templates, rng.fork(category));
    } else if (category == "sar") {
        block = gen_sar(rng.fork(category));
    } else if (category == "reaction") {
        require_inputs(inputs, false, true, false);
        block = gen_reaction(*inputs.templates, rng.fork(category));
    } else if (category == "nmr_elucidation") {
        require_inputs(inputs, false, false, true);
        block = gen_nmr(*inputs.small_nmr, *inputs.nmr_docs);
    } else {
        throw std::invalid_argument(
            "unknown category " + category +
            " (expected one of counting_carbon, counting_ring, shortest_path, atom_mapping, "
            "smiles_to_iupac, functional_group, locant, sar, reaction, nmr_elucidation)");
    }

    for (auto& q : block) q.seed = seed;
    return block;
}

std::string reference_answer_text(const AnswerSpec& spec) {
    switch (spec.kind) {
        case AnswerSpec::Kind::ExactInteger:
            return std::to_string(spec.integer);
        case AnswerSpec::Kind::TupleMapping: {
            std::string out = "[";
            for (size_t i = 0; i < spec.tuples.size(); ++i) {
                if (i) out += ", ";
                out += "(" + std::to_string(spec.tuples[i].first) + ", " +
                       std::to_string(spec.tuples[i].second) + ")";
            }
            return out + "]";
        }
        case AnswerSpec::Kind::SmilesEquivalent:
            return spec.smiles_key;
        case AnswerSpec::Kind::IupacParsesTo:
            // No naming engine here; hand back the structure itself. A name
            // validator that resolves it to the same structure will accept it,
            // anything else will not.
            return spec.smiles_key;
        case AnswerSpec::Kind::NumericRange: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.1f", 0.5 * (spec.lo + spec.hi));
            return buf;
        }
    }
    throw std::logic_error("unhandled answer kind");
}

}  // namespace chemiq
