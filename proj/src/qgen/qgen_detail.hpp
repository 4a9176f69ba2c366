#pragma once

#include <map>
#include <string>

#include "chemiq/molgraph.hpp"

namespace chemiq::detail {

// "atom_mapping" + "semi_canonical" + 7 -> "atom_mapping-semi-canonical-007";
// the variant is hyphenated so the id splits unambiguously on the last dashes.
std::string question_id(const std::string& category, const std::string& variant, int n);

// Spells one reactant component. Components without attachment points are
// returned verbatim so ions and catalysts keep their written form; spliced
// components are written rooted at their first pattern atom.
std::string render_component(const std::string& pattern,
                             const std::map<int, Molecule>& by_class);

void add_formula(Formula& into, const Formula& other);

}  // namespace chemiq::detail
