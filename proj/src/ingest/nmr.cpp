#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "chemiq/ingest.hpp"
#include "chemiq/util.hpp"

namespace chemiq {

namespace {

using nlohmann::json;

void read_1d(const json& spectrum, SpectraSet& out) {
    std::string nucleus = spectrum.at("info").at("nucleus").get<std::string>();
    if (nucleus != "1H" && nucleus != "13C")
        throw std::runtime_error("unsupported nucleus: " + nucleus);
    for (const auto& range : spectrum.at("ranges")) {
        for (const auto& sig : range.at("signals")) {
            if (nucleus == "1H") {
                H1Signal s;
                s.shift = sig.at("delta").get<double>();
                s.multiplicity = sig.at("multiplicity").get<std::string>();
                if (sig.contains("js"))
                    for (const auto& j : sig.at("js"))
                        s.js.push_back(j.at("coupling").get<double>());
                s.integration = sig.at("integration").get<int>();
                out.h1.push_back(std::move(s));
            } else if (nucleus == "13C") {
                C13Signal s;
                s.shift = sig.at("delta").get<double>();
                s.multiplicity = sig.value("multiplicity", std::string("s"));
                s.count = sig.value("nbAtoms", 1);
                out.c13.push_back(std::move(s));
            }
        }
    }
}

void read_2d(const json& spectrum, SpectraSet& out) {
    std::string experiment =
        spectrum.at("info").at("experiment").get<std::string>();
    std::vector<Peak2D>* peaks = nullptr;
    if (experiment == "cosy") peaks = &out.cosy;
    else if (experiment == "hsqc") peaks = &out.hsqc;
    else if (experiment == "hmbc") peaks = &out.hmbc;
    else throw std::runtime_error("unsupported experiment: " + experiment);

    for (const auto& zone : spectrum.at("zones")) {
        Peak2D p;
        p.x = zone.at("x").at("delta").get<double>();
        p.y = zone.at("y").at("delta").get<double>();
        peaks->push_back(p);
    }
}

void sort_by_partner(std::vector<Peak2D>& peaks) {
    std::stable_sort(peaks.begin(), peaks.end(),
                     [](const Peak2D& a, const Peak2D& b) { return a.y > b.y; });
}

}  // namespace

void normalize_spectra(SpectraSet& spectra) {
    std::stable_sort(spectra.h1.begin(), spectra.h1.end(),
                     [](const H1Signal& a, const H1Signal& b) {
                         return a.shift > b.shift;
                     });
    std::stable_sort(spectra.c13.begin(), spectra.c13.end(),
                     [](const C13Signal& a, const C13Signal& b) {
                         return a.shift > b.shift;
                     });

    // A COSY spectrum is symmetric, so drop self-correlations and keep only
    // the first-seen orientation of each cross peak.
    std::vector<Peak2D> kept;
    std::set<std::pair<double, double>> seen;
    for (const auto& p : spectra.cosy) {
        if (p.x == p.y) continue;
        auto key = std::minmax(p.x, p.y);
        if (!seen.insert(key).second) continue;
        kept.push_back(p);
    }
    spectra.cosy = std::move(kept);

    sort_by_partner(spectra.cosy);
    sort_by_partner(spectra.hsqc);
    sort_by_partner(spectra.hmbc);
}

SpectraSet parse_nmr_prediction(const std::string& json_text) {
    json doc = json::parse(json_text);
    SpectraSet out;
    out.smiles = doc.at("molecule").at("smiles").get<std::string>();
    out.formula = molecular_formula(parse_smiles(out.smiles)).hill();
    for (const auto& spectrum : doc.at("spectra")) {
        int dim = spectrum.at("info").at("dimension").get<int>();
        if (dim == 1) read_1d(spectrum, out);
        else if (dim == 2) read_2d(spectrum, out);
        else throw std::runtime_error("unsupported dimension");
    }
    normalize_spectra(out);
    return out;
}

SpectraSet load_nmr_prediction_file(const std::string& path) {
    try {
        return parse_nmr_prediction(read_text_file(path));
    } catch (const json::exception& e) {
        throw std::runtime_error("bad spectra document " + path + ": " + e.what());
    }
}

std::vector<SmallNmrEntry> load_small_nmr(const std::string& path) {
    std::vector<SmallNmrEntry> out;
    SmallNmrEntry cur;

    auto flush = [&](int line_no) {
        if (cur.smiles.empty() && cur.formula.empty() && cur.h1_text.empty() &&
            cur.c13_text.empty())
            return;
        if (cur.smiles.empty() || cur.formula.empty() || cur.h1_text.empty() ||
            cur.c13_text.empty())
            throw std::runtime_error("incomplete record near line " +
                                     std::to_string(line_no) + " in " + path);
        std::string derived = molecular_formula(parse_smiles(cur.smiles)).hill();
        if (derived != cur.formula)
            throw std::runtime_error("formula " + cur.formula +
                                     " does not match structure " + cur.smiles +
                                     " (" + derived + ") in " + path);
        out.push_back(std::move(cur));
        cur = {};
    };

    int line_no = 0;
    for (const auto& raw : read_lines(path)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty()) {
            flush(line_no);
            continue;
        }
        if (line[0] == '#') continue;
        if (starts_with(line, "SMILES:"))
            cur.smiles = trim(line.substr(7));
        else if (starts_with(line, "Formula:"))
            cur.formula = trim(line.substr(8));
        else if (starts_with(line, "1H NMR:"))
            cur.h1_text = line;
        else if (starts_with(line, "13C NMR:"))
            cur.c13_text = line;
        else
            throw std::runtime_error("unrecognized line " +
                                     std::to_string(line_no) + " in " + path);
    }
    flush(line_no + 1);

    if (out.empty()) throw std::runtime_error("no records in " + path);
    return out;
}

}  // namespace chemiq
