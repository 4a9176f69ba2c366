#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chemiq/util.hpp"

namespace chemiq {

class ParseError : public std::runtime_error {
 public:
  enum class Kind {
    BadCharacter,
    UnknownElement,
    UnmatchedParenthesis,
    UnclosedRing,
    RingBondMismatch,
    DuplicateBond,
    DanglingBond,
    BracketSyntax,
    ValenceOverflow,
    EmptyInput,
  };

  ParseError(Kind kind, size_t pos, const std::string& msg)
      : std::runtime_error(msg), kind_(kind), pos_(pos) {}

  Kind kind() const { return kind_; }
  size_t position() const { return pos_; }

 private:
  Kind kind_;
  size_t pos_;
};

enum class BondOrder : uint8_t { Single = 1, Double = 2, Triple = 3, Aromatic = 4 };

struct Atom {
  std::string element;  // element symbol, "*" for a dummy attachment point
  bool aromatic = false;
  int charge = 0;
  int h_count = 0;     // total attached hydrogens (implicit or bracket-explicit)
  int map_class = 0;   // bracket atom-class label, used for template splicing
};

struct Bond {
  int a = -1;
  int b = -1;
  BondOrder order = BondOrder::Single;
};

struct Molecule {
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;

  int add_atom(const Atom& a);
  int add_bond(int a, int b, BondOrder order);
  int bond_between(int a, int b) const;  // bond index or -1

  // neighbor atom indices / incident bond indices, in bond insertion order
  std::vector<std::vector<int>> adjacency() const;
  std::vector<std::vector<int>> incidence() const;

  int heavy_count() const;  // all atoms; explicit hydrogens never become atoms
  int component_count() const;
  std::vector<int> component_labels() const;
};

// --- parsing / writing -------------------------------------------------------

// Organic-subset SMILES with bracket atoms, ring closures (incl. %nn),
// branches, dot-separated components, aromatic lowercase and dummy atoms.
// Stereo markers (@, /, \) and isotope labels are accepted and discarded.
Molecule parse_smiles(const std::string& smiles);

// Deterministic canonical writer: isomorphic inputs yield byte-identical
// output. Aromatic flags are written as parsed; use canonical_key() to compare
// across Kekule spellings.
std::string write_canonical(const Molecule& m);

// Canonical-priority walk rooted at the given atom index.
std::string write_rooted_canonical(const Molecule& m, int root);

// Uniformly random root and neighbor order; round-trips to an isomorphic
// molecule.
std::string write_random(const Molecule& m, RandomSource& rng);

// --- aromatic normalization --------------------------------------------------

// Perceives aromaticity on 5-/6-membered rings and their fusions whose atoms
// are sp2-consistent and whose pi-electron count satisfies the 4n+2 rule;
// Kekule inputs are aromatized, existing aromatic flags are kept. Hydrogen
// counts are preserved. Exotic systems outside this envelope are left alone.
Molecule normalize_aromatic(const Molecule& m);

// write_canonical(normalize_aromatic(m)); the comparison key for corpus
// deduplication and molecule equality.
std::string canonical_key(const Molecule& m);

// --- graph queries -----------------------------------------------------------

int count_carbons(const Molecule& m);

// Circuit rank: bonds - atoms + components.
int count_rings(const Molecule& m);

// Number of bonds on the shortest path between two distinct atoms; throws
// std::invalid_argument when the atoms coincide or are disconnected.
int shortest_path_bonds(const Molecule& m, int a, int b);

// Element-, charge-, aromaticity-, hydrogen- and bond-order-preserving graph
// automorphism count, early-exiting once `cap` automorphisms are found.
long automorphism_count(const Molecule& m, long cap = 2);

// If a and b are isomorphic (same labels as automorphism_count), returns for
// every atom index i of b the corresponding atom index in a. Deterministic.
std::optional<std::vector<int>> isomorphism_map(const Molecule& a, const Molecule& b);

// True iff the aromatic-normalized graphs are isomorphic; implemented as
// canonical-key equality.
bool molecules_equal(const Molecule& a, const Molecule& b);

// --- formula / filters -------------------------------------------------------

struct Formula {
  std::map<std::string, int> counts;  // element symbol -> count, H included

  std::string hill() const;  // C first, H second, then alphabetical
  bool operator==(const Formula& other) const { return counts == other.counts; }
};

// Dummy atoms are excluded from the formula and the weight.
Formula molecular_formula(const Molecule& m);
double molecular_weight(const Molecule& m);

struct FilterReport {
  bool has_charge = false;
  bool has_spiro = false;
  bool has_bridgehead = false;
  int heavy_atoms = 0;

  bool accepted(int max_heavy = 30) const {
    return !has_charge && !has_spiro && !has_bridgehead && heavy_atoms <= max_heavy;
  }
};

FilterReport structural_filters(const Molecule& m);

// Ring-bond connected components, one sub-molecule per ring system, used by
// the corpus ring whitelist.
std::vector<Molecule> ring_systems(const Molecule& m);

}  // namespace chemiq
