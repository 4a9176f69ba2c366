#include <stdexcept>

#include <json.hpp>

#include "chemiq/qgen.hpp"
#include "qgen_detail.hpp"

namespace chemiq {

using nlohmann::ordered_json;

namespace {

std::vector<std::string> string_list(const ordered_json& j) {
    std::vector<std::string> out;
    for (const auto& e : j) out.push_back(e.get<std::string>());
    return out;
}

int sole_dummy(const Molecule& fragment) {
    int dummy = -1;
    for (size_t i = 0; i < fragment.atoms.size(); ++i) {
        if (fragment.atoms[i].element != "*") continue;
        if (dummy != -1) throw std::invalid_argument("fragment has several attachment points");
        dummy = static_cast<int>(i);
    }
    if (dummy == -1) throw std::invalid_argument("fragment has no attachment point");
    return dummy;
}

// The attachment atom is the dummy's sole, singly-bonded neighbor.
int attachment_neighbor(const Molecule& m, int dummy) {
    int neighbor = -1;
    for (const auto& b : m.bonds) {
        if (b.a != dummy && b.b != dummy) continue;
        if (neighbor != -1)
            throw std::invalid_argument("attachment point bonded more than once");
        if (b.order != BondOrder::Single)
            throw std::invalid_argument("attachment bond must be single");
        neighbor = (b.a == dummy) ? b.b : b.a;
    }
    if (neighbor == -1) throw std::invalid_argument("attachment point has no neighbor");
    return neighbor;
}

}  // namespace

Molecule attach(const Molecule& base, int site, const Molecule& fragment) {
    if (site < 0 || site >= static_cast<int>(base.atoms.size()))
        throw std::invalid_argument("attach: site out of range");
    if (base.atoms[site].element == "*")
        throw std::invalid_argument("attach: site is an attachment point");
    if (base.atoms[site].h_count < 1)
        throw std::invalid_argument("attach: site has no hydrogen to replace");

    const int dummy = sole_dummy(fragment);
    const int head = attachment_neighbor(fragment, dummy);

    Molecule out = base;
    out.atoms[site].h_count -= 1;

    std::vector<int> remap(fragment.atoms.size(), -1);
    for (size_t i = 0; i < fragment.atoms.size(); ++i)
        if (static_cast<int>(i) != dummy) remap[i] = out.add_atom(fragment.atoms[i]);
    for (const auto& b : fragment.bonds)
        if (b.a != dummy && b.b != dummy) out.add_bond(remap[b.a], remap[b.b], b.order);

    out.add_bond(site, remap[head], BondOrder::Single);
    return out;
}

Molecule splice(const Molecule& pattern, const std::map<int, Molecule>& by_class) {
    Molecule out;
    std::vector<int> remap(pattern.atoms.size(), -1);  // pattern atom -> output atom
    std::vector<int> attach_at(pattern.atoms.size(), -1);  // dummy -> fragment head

    for (size_t i = 0; i < pattern.atoms.size(); ++i) {
        const Atom& a = pattern.atoms[i];
        if (a.element == "*") {
            if (a.map_class == 0)
                throw std::invalid_argument("splice: attachment point without a class");
            continue;
        }
        remap[i] = out.add_atom(a);
    }

    for (size_t i = 0; i < pattern.atoms.size(); ++i) {
        const Atom& a = pattern.atoms[i];
        if (a.element != "*") continue;
        auto it = by_class.find(a.map_class);
        if (it == by_class.end())
            throw std::invalid_argument("splice: no fragment for class " +
                                        std::to_string(a.map_class));
        const Molecule& fragment = it->second;
        const int dummy = sole_dummy(fragment);
        const int head = attachment_neighbor(fragment, dummy);

        std::vector<int> fmap(fragment.atoms.size(), -1);
        for (size_t k = 0; k < fragment.atoms.size(); ++k)
            if (static_cast<int>(k) != dummy) fmap[k] = out.add_atom(fragment.atoms[k]);
        for (const auto& b : fragment.bonds)
            if (b.a != dummy && b.b != dummy) out.add_bond(fmap[b.a], fmap[b.b], b.order);
        attach_at[i] = fmap[head];
    }

    auto endpoint = [&](int pattern_atom) {
        return pattern.atoms[pattern_atom].element == "*" ? attach_at[pattern_atom]
                                                         : remap[pattern_atom];
    };
    for (const auto& b : pattern.bonds) out.add_bond(endpoint(b.a), endpoint(b.b), b.order);

    return out;
}

namespace detail {

std::string render_component(const std::string& pattern,
                             const std::map<int, Molecule>& by_class) {
    if (pattern.find("[*:") == std::string::npos) return pattern;
    Molecule m = splice(parse_smiles(pattern), by_class);
    if (m.atoms.empty()) throw std::invalid_argument("empty component after splicing");
    // splice keeps non-dummy pattern atoms in front, so atom 0 is the first
    // atom the template spelled out
    return write_rooted_canonical(m, 0);
}

void add_formula(Formula& into, const Formula& other) {
    for (const auto& [element, count] : other.counts) into.counts[element] += count;
}

}  // namespace detail

TemplateLibrary load_templates(const std::string& path) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("cannot parse template library " + path + ": " + e.what());
    }

    try {
        const std::string schema = doc.at("schema").get<std::string>();
        if (schema != "chemiq-templates/1")
            throw std::runtime_error("unsupported template schema: " + schema);

        TemplateLibrary lib;
        for (const auto& [pool, list] : doc.at("fragments").items()) {
            lib.fragments[pool] = string_list(list);
            for (const auto& s : lib.fragments[pool]) {
                Molecule f = parse_smiles(s);
                attachment_neighbor(f, sole_dummy(f));  // must be a valid fragment
            }
        }

        for (const auto& r : doc.at("reactions")) {
            ReactionTemplate t;
            t.name = r.at("name").get<std::string>();
            for (const auto& operand : r.at("reactants"))
                t.reactants.push_back(string_list(operand));
            t.product = r.at("product").get<std::string>();
            t.byproducts = string_list(r.at("byproducts"));
            t.catalysts = string_list(r.at("catalysts"));
            t.extra_reactants = string_list(r.at("extra_reactants"));
            for (const auto& [cls, pool] : r.at("slots").items()) {
                const std::string name = pool.get<std::string>();
                if (!lib.fragments.count(name))
                    throw std::runtime_error(t.name + ": unknown fragment pool " + name);
                t.slots[std::stoi(cls)] = name;
            }
            lib.reactions.push_back(std::move(t));
        }

        for (const auto& g : doc.at("functional_groups")) {
            FunctionalGroup fg;
            fg.name = g.at("name").get<std::string>();
            fg.category = g.at("category").get<std::string>();
            fg.smiles = g.at("smiles").get<std::string>();
            Molecule f = parse_smiles(fg.smiles);
            attachment_neighbor(f, sole_dummy(f));
            lib.functional_groups.push_back(std::move(fg));
        }

        for (const auto& s : doc.at("locant_scaffolds")) {
            LocantScaffold sc;
            sc.name = s.at("name").get<std::string>();
            sc.smiles = s.at("smiles").get<std::string>();
            parse_smiles(sc.smiles);
            lib.locant_scaffolds.push_back(std::move(sc));
        }

        return lib;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("malformed template library " + path + ": " + e.what());
    }
}

}  // namespace chemiq
