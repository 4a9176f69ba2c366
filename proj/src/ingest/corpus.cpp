#include "chemiq/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "chemiq/util.hpp"

namespace chemiq {

namespace {

bool has_dummy(const Molecule& m) {
    for (const auto& a : m.atoms)
        if (a.element == "*") return true;
    return false;
}

std::set<std::string> load_ring_whitelist(const std::string& path) {
    std::set<std::string> keys;
    for (const auto& raw : read_lines(path)) {
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        keys.insert(canonical_key(parse_smiles(line)));
    }
    if (keys.empty())
        throw std::runtime_error("ring whitelist is empty: " + path);
    return keys;
}

bool rings_allowed(const Molecule& m, const std::set<std::string>& whitelist) {
    for (const auto& sys : ring_systems(m))
        if (whitelist.count(canonical_key(sys)) == 0) return false;
    return true;
}

}  // namespace

Corpus load_corpus(const std::string& path, const CorpusOptions& options) {
    std::set<std::string> whitelist;
    if (!options.ring_whitelist_path.empty())
        whitelist = load_ring_whitelist(options.ring_whitelist_path);

    Corpus corpus;
    std::set<std::string> seen;
    int line_no = 0;
    for (const auto& raw : read_lines(path)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        ++corpus.stats.lines;

        auto fields = split_ws(line);
        std::string id =
            fields.size() > 1 ? fields[1] : "line" + std::to_string(line_no);

        Molecule mol;
        try {
            mol = normalize_aromatic(parse_smiles(fields[0]));
        } catch (const ParseError&) {
            ++corpus.stats.parse_failures;
            continue;
        }

        if (mol.component_count() != 1 || has_dummy(mol)) {
            ++corpus.stats.filter_rejections;
            continue;
        }
        if (!structural_filters(mol).accepted(options.max_heavy)) {
            ++corpus.stats.filter_rejections;
            continue;
        }
        if (!whitelist.empty() && !rings_allowed(mol, whitelist)) {
            ++corpus.stats.filter_rejections;
            continue;
        }

        double weight;
        try {
            weight = molecular_weight(mol);
        } catch (const std::invalid_argument&) {
            ++corpus.stats.filter_rejections;
            continue;
        }

        std::string canonical = write_canonical(mol);
        if (!seen.insert(canonical).second) {
            ++corpus.stats.duplicates;
            continue;
        }
        int heavy = mol.heavy_count();
        corpus.entries.push_back(
            {id, std::move(mol), std::move(canonical), heavy, weight});
    }

    if (corpus.entries.empty())
        throw std::runtime_error("no usable molecules in corpus: " + path);
    return corpus;
}

std::vector<std::vector<int>> bin_by_weight(const Corpus& corpus, int bins) {
    if (bins <= 0) throw std::invalid_argument("bin_by_weight: bins must be positive");
    std::vector<std::vector<int>> out(bins);
    if (corpus.entries.empty()) return out;

    double lo = corpus.entries[0].weight, hi = lo;
    for (const auto& e : corpus.entries) {
        lo = std::min(lo, e.weight);
        hi = std::max(hi, e.weight);
    }
    double width = (hi - lo) / bins;
    for (size_t i = 0; i < corpus.entries.size(); ++i) {
        int b;
        if (width <= 0.0) {
            b = bins - 1;
        } else {
            b = static_cast<int>(std::floor((corpus.entries[i].weight - lo) / width));
            b = std::clamp(b, 0, bins - 1);
        }
        out[b].push_back(static_cast<int>(i));
    }
    return out;
}

}  // namespace chemiq
