#pragma once

#include <optional>
#include <string>
#include <vector>

namespace chemiq::detail {

bool is_known_element(const std::string& symbol);

// Daylight-style normal valence lists for organic-subset atoms; empty for
// elements outside the organic subset (bracket atoms carry explicit H only).
const std::vector<int>& valence_list(const std::string& symbol);

bool organic_subset(const std::string& symbol);

// lowercase aromatic symbols permitted outside brackets
bool aromatic_organic(const std::string& symbol);

// lowercase aromatic symbols permitted inside brackets (se, as included)
std::optional<std::string> bracket_aromatic_to_element(const std::string& lower);

std::optional<double> atomic_weight(const std::string& symbol);

}  // namespace chemiq::detail
