#pragma once

#include <optional>
#include <vector>

#include "chemiq/molgraph.hpp"

namespace chemiq::detail {

// Hydrogen count an unbracketed atom would carry given its current bonds.
// Aromatic atoms count one connection per bond plus one shared pi bond for
// carbon (and for 2-connected N/P); aliphatic atoms use the smallest normal
// valence that fits the bond-order sum. nullopt = no normal valence fits.
std::optional<int> default_hydrogens(const Molecule& m,
                                     const std::vector<std::vector<int>>& incidence,
                                     int atom);

// Bonds that lie on at least one cycle (non-bridge edges).
std::vector<bool> ring_bond_mask(const Molecule& m);

// Iterative invariant refinement over (element, aromaticity, charge, attached
// hydrogens, degree) plus neighbor-rank multisets; equal ranks are a necessary
// condition for two atoms to be related by an automorphism. Individualizing an
// atom (index >= 0) pins it into its own leading cell.
std::vector<int> refine_ranks(const Molecule& m, int individualized);

}  // namespace chemiq::detail
