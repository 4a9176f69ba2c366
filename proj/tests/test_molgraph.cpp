#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chemiq/molgraph.hpp"
#include "chemiq/util.hpp"

using namespace chemiq;

namespace {

Molecule P(const std::string& s) { return parse_smiles(s); }

std::optional<ParseError::Kind> parse_error_kind(const std::string& s) {
  try {
    parse_smiles(s);
    return std::nullopt;
  } catch (const ParseError& e) {
    return e.kind();
  }
}

int dummy_index(const Molecule& m, int which) {
  int seen = 0;
  for (size_t i = 0; i < m.atoms.size(); ++i) {
    if (m.atoms[i].element == "*") {
      if (seen == which) return static_cast<int>(i);
      ++seen;
    }
  }
  return -1;
}

std::vector<std::vector<int>> order_matrix(const Molecule& m) {
  std::vector<std::vector<int>> a(m.atoms.size(),
                                  std::vector<int>(m.atoms.size(), 0));
  for (const Bond& b : m.bonds) {
    a[b.a][b.b] = static_cast<int>(b.order);
    a[b.b][b.a] = static_cast<int>(b.order);
  }
  return a;
}

bool same_label(const Atom& x, const Atom& y) {
  return x.element == y.element && x.aromatic == y.aromatic &&
         x.charge == y.charge && x.h_count == y.h_count;
}

// full permutation scan; only for molecules small enough to enumerate
long brute_automorphisms(const Molecule& m) {
  const int n = static_cast<int>(m.atoms.size());
  auto a = order_matrix(m);
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  long count = 0;
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      if (!same_label(m.atoms[i], m.atoms[p[i]])) ok = false;
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n && ok; ++j)
        if (a[i][j] != a[p[i]][p[j]]) ok = false;
    if (ok) ++count;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

bool mapping_valid(const Molecule& a, const Molecule& b,
                   const std::vector<int>& map) {
  if (map.size() != b.atoms.size()) return false;
  std::set<int> image(map.begin(), map.end());
  if (image.size() != map.size()) return false;
  for (size_t i = 0; i < b.atoms.size(); ++i)
    if (!same_label(b.atoms[i], a.atoms[map[i]])) return false;
  auto am = order_matrix(a), bm = order_matrix(b);
  for (size_t i = 0; i < b.atoms.size(); ++i)
    for (size_t j = i + 1; j < b.atoms.size(); ++j)
      if (bm[i][j] != am[map[i]][map[j]]) return false;
  return true;
}

}  // namespace

TEST_CASE("linear chains parse with implicit hydrogens") {
  Molecule m = P("CCO");
  REQUIRE(m.atoms.size() == 3);
  REQUIRE(m.bonds.size() == 2);
  CHECK(m.atoms[0].element == "C");
  CHECK(m.atoms[0].h_count == 3);
  CHECK(m.atoms[1].h_count == 2);
  CHECK(m.atoms[2].element == "O");
  CHECK(m.atoms[2].h_count == 1);

  CHECK(P("C").atoms[0].h_count == 4);
  CHECK(P("N").atoms[0].h_count == 3);
  CHECK(P("O").atoms[0].h_count == 2);
  CHECK(P("Cl").atoms[0].h_count == 1);
  CHECK(P("S").atoms[0].h_count == 2);
  CHECK(P("P").atoms[0].h_count == 3);
  CHECK(P("C=C").atoms[0].h_count == 2);
  CHECK(P("C#N").atoms[0].h_count == 1);
  CHECK(P("C#N").atoms[1].h_count == 0);
}

TEST_CASE("multi-valence elements pick the smallest fitting valence") {
  // sulfur: 2, 4, 6
  CHECK(P("SS").atoms[0].h_count == 1);
  CHECK(P("CS(C)=O").atoms[1].h_count == 0);
  CHECK(P("OS(=O)(=O)O").atoms[1].h_count == 0);
  // phosphorus: 3, 5
  CHECK(P("OP(O)O").atoms[1].h_count == 0);
  CHECK(P("P(=O)(O)O").atoms[0].h_count == 1);
  CHECK(P("OP(=O)(O)O").atoms[1].h_count == 0);
  // nitrogen: 3, 5 (uncharged nitro spelling)
  Molecule nitro = P("CN(=O)=O");
  CHECK(nitro.atoms[1].h_count == 0);
  CHECK(P("CNC").atoms[1].h_count == 1);
}

TEST_CASE("aromatic atoms get Kekule-consistent hydrogen counts") {
  Molecule benzene = P("c1ccccc1");
  for (const Atom& a : benzene.atoms) {
    CHECK(a.aromatic);
    CHECK(a.h_count == 1);
  }
  for (const Bond& b : benzene.bonds) CHECK(b.order == BondOrder::Aromatic);

  Molecule pyridine = P("c1ccncc1");
  int n_h = -1;
  for (const Atom& a : pyridine.atoms)
    if (a.element == "N") n_h = a.h_count;
  CHECK(n_h == 0);

  Molecule pyrrole = P("c1cc[nH]c1");
  for (const Atom& a : pyrrole.atoms)
    if (a.element == "N") CHECK(a.h_count == 1);

  CHECK(P("c1ccoc1").atoms.size() == 5);
  CHECK(P("c1ccsc1").atoms.size() == 5);
  CHECK(P("Cc1ccccc1").atoms[1].h_count == 0);  // substituted ring carbon
}

TEST_CASE("bracket atoms carry charge, hydrogens and class labels") {
  Molecule m = P("[13CH4]");
  REQUIRE(m.atoms.size() == 1);
  CHECK(m.atoms[0].element == "C");
  CHECK(m.atoms[0].h_count == 4);  // isotope label dropped

  CHECK(P("[O-]").atoms[0].charge == -1);
  CHECK(P("[NH4+]").atoms[0].charge == 1);
  CHECK(P("[NH4+]").atoms[0].h_count == 4);
  CHECK(P("[Fe+2]").atoms[0].charge == 2);
  CHECK(P("[Fe++]").atoms[0].charge == 2);
  CHECK(P("[CH3:7]").atoms[0].map_class == 7);
  CHECK(P("[C@@H](F)(Cl)Br").atoms[0].h_count == 1);  // stereo dropped
  CHECK(P("C/C=C\\C").atoms.size() == 4);

  Molecule folded = P("[H]O[H]");
  REQUIRE(folded.atoms.size() == 1);
  CHECK(folded.atoms[0].element == "O");
  CHECK(folded.atoms[0].h_count == 2);
  CHECK(P("C([H])([H])([H])[H]").atoms[0].h_count == 4);
}

TEST_CASE("ring closures support %nn and digit reuse") {
  Molecule hexane = P("C1CCCCC1");
  CHECK(hexane.atoms.size() == 6);
  CHECK(hexane.bonds.size() == 6);
  CHECK(molecules_equal(hexane, P("C%12CCCCC%12")));

  Molecule two = P("C1CC1C1CC1");  // digit 1 reused after closing
  CHECK(two.atoms.size() == 6);
  CHECK(count_rings(two) == 2);

  Molecule naph = P("c1ccc2ccccc2c1");
  CHECK(naph.atoms.size() == 10);
  CHECK(naph.bonds.size() == 11);
  CHECK(count_rings(naph) == 2);
}

TEST_CASE("dot-separated components stay disconnected") {
  Molecule m = P("[Na+].[Cl-]");
  CHECK(m.atoms.size() == 2);
  CHECK(m.bonds.size() == 0);
  CHECK(m.component_count() == 2);
  CHECK(P("CC.CC.O").component_count() == 3);
}

TEST_CASE("parse errors report a specific failure kind") {
  using K = ParseError::Kind;
  CHECK(parse_error_kind("") == K::EmptyInput);
  CHECK(parse_error_kind("   ") == K::EmptyInput);
  CHECK(parse_error_kind("C$C") == K::BadCharacter);
  CHECK(parse_error_kind("C(C") == K::UnmatchedParenthesis);
  CHECK(parse_error_kind("CC)") == K::UnmatchedParenthesis);
  CHECK(parse_error_kind("C1CC") == K::UnclosedRing);
  CHECK(parse_error_kind("C-1CCCCC=1") == K::RingBondMismatch);
  CHECK(parse_error_kind("C12CC12") == K::DuplicateBond);
  CHECK(parse_error_kind("C11") == K::DuplicateBond);
  CHECK(parse_error_kind("C=") == K::DanglingBond);
  CHECK(parse_error_kind("=C") == K::DanglingBond);
  CHECK(parse_error_kind("[C") == K::BracketSyntax);
  CHECK(parse_error_kind("[]") == K::BracketSyntax);
  CHECK(parse_error_kind("[Xz]") == K::UnknownElement);
  CHECK(parse_error_kind("Q") == K::UnknownElement);
  CHECK(parse_error_kind("C(C)(C)(C)(C)C") == K::ValenceOverflow);
  CHECK(parse_error_kind("O(C)(C)C") == K::ValenceOverflow);

  try {
    parse_smiles("C(C");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }
}

TEST_CASE("carbon count matches the worked example") {
  Molecule m = P("C(C)Oc1ccc(cc1Cl)-c1nn(cc1C=C(C#N)C(NCC)=O)-c1ccccc1");
  CHECK(count_carbons(m) == 23);
  CHECK(count_carbons(P("CCO")) == 2);
  CHECK(count_carbons(P("[Na+].[Cl-]")) == 0);
}

TEST_CASE("ring count is the circuit rank") {
  CHECK(count_rings(P("s1c2n(cc1)cc(n2)C(N1C(c2ccccc2)c2c(CC1)c1ccccc1[nH]2)=O")) == 6);
  // same scaffold with a pyridyl in place of the phenyl, as it also circulates
  CHECK(count_rings(P("s1c2n(cc1)cc(n2)C(N1C(c2ccccn2)c2c(CC1)c1ccccc1[nH]2)=O")) == 6);
  CHECK(count_rings(P("c1ccc2ccccc2c1")) == 2);
  CHECK(count_rings(P("CCO")) == 0);
  CHECK(count_rings(P("c1ccccc1-c1ccccc1")) == 2);
  CHECK(count_rings(P("C1C2CC3CC1CC(C2)C3")) == 3);   // adamantane
  CHECK(count_rings(P("C1CCC2(C1)CCCC2")) == 2);      // spiro[4.4]nonane
  CHECK(count_rings(P("C1CC1.C1CC1")) == 2);          // per component
}

TEST_CASE("shortest path between the attachment points") {
  Molecule m = P("*c1cccc2c1sc1c(C)nn(C(C(=O)NCc3ccc(F)cc3)C(*)C)c(=O)c12");
  int d0 = dummy_index(m, 0), d1 = dummy_index(m, 1);
  REQUIRE(d0 >= 0);
  REQUIRE(d1 >= 0);
  CHECK(shortest_path_bonds(m, d0, d1) == 9);

  Molecule chain = P("CCCCC");
  CHECK(shortest_path_bonds(chain, 0, 4) == 4);
  Molecule ring = P("C1CCCCC1");
  CHECK(shortest_path_bonds(ring, 0, 3) == 3);
  CHECK(shortest_path_bonds(ring, 0, 5) == 1);
  CHECK_THROWS_AS(shortest_path_bonds(chain, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(shortest_path_bonds(P("C.C"), 0, 1), std::invalid_argument);
}

TEST_CASE("shortest paths agree with an all-pairs recomputation") {
  for (const char* s : {"*c1cccc2c1sc1c(C)nn(C(C(=O)NCc3ccc(F)cc3)C(*)C)c(=O)c12",
                        "C1CC2(CCC2)CC1", "c1ccc2ccccc2c1"}) {
    Molecule m = P(s);
    const int n = static_cast<int>(m.atoms.size());
    // Floyd-Warshall over the same graph
    std::vector<std::vector<int>> d(n, std::vector<int>(n, 1 << 20));
    for (int i = 0; i < n; ++i) d[i][i] = 0;
    for (const Bond& b : m.bonds) d[b.a][b.b] = d[b.b][b.a] = 1;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) CHECK(shortest_path_bonds(m, i, j) == d[i][j]);
  }
}

TEST_CASE("canonical writer is spelling-invariant") {
  CHECK(write_canonical(P("CCO")) == write_canonical(P("OCC")));
  CHECK(write_canonical(P("Cc1ccccc1")) == write_canonical(P("c1ccccc1C")));
  CHECK(write_canonical(P("c1ccc(cc1)-c1ccccc1")) ==
        write_canonical(P("c1ccccc1-c1ccccc1")));
  CHECK(write_canonical(P("[Na+].[Cl-]")) == write_canonical(P("[Cl-].[Na+]")));
  CHECK(write_canonical(P("C1CCCCC1")) == write_canonical(P("C2CCCCC2")));
}

TEST_CASE("canonical output reparses to an equal molecule") {
  for (const char* s :
       {"CCO", "c1ccccc1", "C(C)Oc1ccc(cc1Cl)-c1nn(cc1C=C(C#N)C(NCC)=O)-c1ccccc1",
        "*c1cccc2c1sc1c(C)nn(C(C(=O)NCc3ccc(F)cc3)C(*)C)c(=O)c12",
        "CC(=O)NCCCCN", "CCCN1C(=O)c2ccccc2N(CC(=O)Nc3ccccc3)C1=O",
        "C1CCC2(C1)CCCC2", "C1C2CC3CC1CC(C2)C3", "[O-]C(=O)c1ccccc1",
        "[CH3:1]Oc1ccc(cc1)[N+](=O)[O-]", "O=c1cccc[nH]1", "c1cnc2[nH]ccc2c1",
        "Clc1ccccc1", "*", "[Na+].[Cl-]", "C/C=C/C"}) {
    Molecule m = P(s);
    std::string c = write_canonical(m);
    Molecule back = P(c);
    CHECK(write_canonical(back) == c);
    CHECK(molecules_equal(m, back));
  }
}

TEST_CASE("random rewrites keep the canonical form") {
  for (const char* s :
       {"CCO", "c1ccccc1", "CC(=O)NCCCCN",
        "C(C)Oc1ccc(cc1Cl)-c1nn(cc1C=C(C#N)C(NCC)=O)-c1ccccc1",
        "*c1cccc2c1sc1c(C)nn(C(C(=O)NCc3ccc(F)cc3)C(*)C)c(=O)c12",
        "C1CCC2(C1)CCCC2", "[O-]C(=O)c1ccccc1", "CN1CCC[C@H]1c1cccnc1"}) {
    Molecule m = P(s);
    std::string c = write_canonical(m);
    for (uint64_t seed = 1; seed <= 20; ++seed) {
      RandomSource rng(seed);
      std::string r = write_random(m, rng);
      CAPTURE(s);
      CAPTURE(r);
      CHECK(write_canonical(P(r)) == c);
    }
  }
}

TEST_CASE("random writer is seed-deterministic") {
  Molecule m = P("CC(=O)NCCCCN");
  RandomSource a(42), b(42), c(43);
  std::string sa = write_random(m, a);
  CHECK(sa == write_random(m, b));
  std::string sc = write_random(m, c);
  CHECK(write_canonical(P(sc)) == write_canonical(m));
}

TEST_CASE("rooted writer starts the walk at the requested atom") {
  Molecule m = P("Clc1ccccc1");
  CHECK(write_rooted_canonical(m, 0).substr(0, 2) == "Cl");
  for (int r = 0; r < static_cast<int>(m.atoms.size()); ++r) {
    Molecule back = P(write_rooted_canonical(m, r));
    CHECK(molecules_equal(m, back));
  }
  Molecule big = P("CC(=O)NCCCCN");
  for (int r = 0; r < static_cast<int>(big.atoms.size()); ++r)
    CHECK(molecules_equal(big, P(write_rooted_canonical(big, r))));
  CHECK_THROWS_AS(write_rooted_canonical(m, 99), std::invalid_argument);
}

TEST_CASE("atom class labels survive the round trip") {
  std::string c = write_canonical(P("[CH3:5]C"));
  CHECK(c.find(":5]") != std::string::npos);
  CHECK(P(c).atoms.size() == 2);
  std::string core = write_canonical(P("c12c([*:1])ccc([*:2])c1c([*:3])co2"));
  Molecule back = P(core);
  std::set<int> classes;
  for (const Atom& a : back.atoms)
    if (a.map_class) classes.insert(a.map_class);
  CHECK(classes == std::set<int>{1, 2, 3});
}

TEST_CASE("Kekule and aromatic spellings share one key") {
  CHECK(canonical_key(P("C1=CC=CC=C1")) == canonical_key(P("c1ccccc1")));
  CHECK(canonical_key(P("C1=CC=CO1")) == canonical_key(P("c1ccoc1")));
  CHECK(canonical_key(P("C1=CC=CN1")) == canonical_key(P("c1cc[nH]c1")));
  CHECK(canonical_key(P("C1=CC=CS1")) == canonical_key(P("c1ccsc1")));
  CHECK(canonical_key(P("C1=CN=CN1")) == canonical_key(P("c1c[nH]cn1")));
  CHECK(canonical_key(P("C1=CC=NC=C1")) == canonical_key(P("c1ccncc1")));
  CHECK(canonical_key(P("O=C1C=CC=CN1")) == canonical_key(P("O=c1cccc[nH]1")));
  // both Kekule choices of naphthalene
  CHECK(canonical_key(P("C1=CC2=CC=CC=C2C=C1")) ==
        canonical_key(P("c1ccc2ccccc2c1")));
  CHECK(canonical_key(P("C1=CC2=CC3=CC=CC=C3C=C2C=C1")) ==
        canonical_key(P("c1ccc2cc3ccccc3cc2c1")));
}

TEST_CASE("anti-aromatic and saturated rings stay as written") {
  Molecule hexane = normalize_aromatic(P("C1CCCCC1"));
  for (const Atom& a : hexane.atoms) CHECK(!a.aromatic);
  Molecule cbd = normalize_aromatic(P("C1=CC=C1"));
  for (const Atom& a : cbd.atoms) CHECK(!a.aromatic);
  Molecule cot = normalize_aromatic(P("C1=CC=CC=CC=C1"));
  for (const Atom& a : cot.atoms) CHECK(!a.aromatic);
  Molecule quinone = normalize_aromatic(P("O=C1C=CC(=O)C=C1"));
  for (const Atom& a : quinone.atoms) CHECK(!a.aromatic);
  CHECK(canonical_key(P("C1CCCCC1")) != canonical_key(P("c1ccccc1")));
}

TEST_CASE("the click product equals its rewritten transcript form") {
  CHECK(molecules_equal(P("c1ccccc1[n]2nnc(CCCl)c2"),
                        P("ClCCc1cn(-c2ccccc2)nn1")));
  CHECK(!molecules_equal(P("c1ccccc1[n]2nnc(CCCl)c2"),
                         P("ClCCc1cn(-c2ccccc2)cn1")));
}

TEST_CASE("automorphism counts on reference molecules") {
  CHECK(automorphism_count(P("c1ccccc1"), 1000) == 12);
  CHECK(automorphism_count(P("C1CCCCC1"), 1000) == 12);
  CHECK(automorphism_count(P("CC(C)C"), 1000) == 6);
  CHECK(automorphism_count(P("CC(C)(C)C"), 1000) == 24);
  CHECK(automorphism_count(P("CCO"), 1000) == 1);
  CHECK(automorphism_count(P("C"), 1000) == 1);
  CHECK(automorphism_count(P("FC(F)F"), 1000) == 6);
  // early exit at the cap
  CHECK(automorphism_count(P("c1ccccc1"), 2) == 2);
  CHECK(automorphism_count(P("CCO"), 2) == 1);
}

TEST_CASE("automorphism counts match a full permutation scan") {
  for (const char* s : {"CCO", "CC(C)C", "c1ccccc1", "C1CCCCC1", "CC(C)(C)C",
                        "C1CC1", "C1COCCN1", "CC=CC", "OCC(O)CO", "FC(F)F",
                        "C#N", "ClC(Cl)(Cl)Cl", "c1ccoc1", "C1CCC1"}) {
    Molecule m = P(s);
    CAPTURE(s);
    CHECK(automorphism_count(m, 1000000) == brute_automorphisms(m));
  }
}

TEST_CASE("isomorphism maps align atoms across spellings") {
  Molecule a = P("C(C)Oc1ccc(cc1Cl)-c1nn(cc1C=C(C#N)C(NCC)=O)-c1ccccc1");
  RandomSource rng(7);
  for (int t = 0; t < 10; ++t) {
    Molecule b = P(write_random(a, rng));
    auto map = isomorphism_map(a, b);
    REQUIRE(map.has_value());
    CHECK(mapping_valid(a, b, *map));
  }
  CHECK(!isomorphism_map(P("CCO"), P("CCN")).has_value());
  CHECK(!isomorphism_map(P("CCCC"), P("CC(C)C")).has_value());
  // bond orders are part of the label: a Kekule ring is not the aromatic ring
  CHECK(!isomorphism_map(P("c1ccccc1"), P("C1=CC=CC=C1")).has_value());
  CHECK(molecules_equal(P("c1ccccc1"), P("C1=CC=CC=C1")));
}

TEST_CASE("molecular formulas in Hill order") {
  CHECK(molecular_formula(P("CC(=O)NCCCCN")).hill() == "C6H14N2O");
  CHECK(molecular_formula(P("CCCN1C(=O)c2ccccc2N(CC(=O)Nc3ccccc3)C1=O")).hill() ==
        "C19H19N3O3");
  CHECK(molecular_formula(P("c1ccccc1")).hill() == "C6H6");
  CHECK(molecular_formula(P("*c1ccccc1")).hill() == "C6H5");  // dummy excluded
  CHECK(molecular_formula(P("O")).hill() == "H2O");
  CHECK(molecular_formula(P("[NH4+]")).hill() == "H4N");
  CHECK(molecular_formula(P("ClCCl")).hill() == "CH2Cl2");
  Formula a = molecular_formula(P("CCO"));
  Formula b = molecular_formula(P("OCC"));
  CHECK(a == b);
}

TEST_CASE("molecular weight sums standard atomic weights") {
  CHECK(molecular_weight(P("C")) == doctest::Approx(16.043).epsilon(1e-3));
  CHECK(molecular_weight(P("O")) == doctest::Approx(18.015).epsilon(1e-3));
  CHECK(molecular_weight(P("c1ccccc1")) == doctest::Approx(78.114).epsilon(1e-3));
  CHECK(molecular_weight(P("CC(=O)NCCCCN")) ==
        doctest::Approx(130.191).epsilon(1e-3));
}

TEST_CASE("structural filters flag charge, spiro and bridged systems") {
  CHECK(structural_filters(P("[NH4+]")).has_charge);
  CHECK(structural_filters(P("[O-]C(=O)C")).has_charge);
  CHECK(!structural_filters(P("CCO")).has_charge);

  CHECK(structural_filters(P("C1CCC2(C1)CCCC2")).has_spiro);
  CHECK(!structural_filters(P("c1ccc2ccccc2c1")).has_spiro);
  CHECK(!structural_filters(P("C1C2CC3CC1CC(C2)C3")).has_spiro);

  CHECK(structural_filters(P("C1CC2CCC1C2")).has_bridgehead);       // norbornane
  CHECK(structural_filters(P("C1C2CC3CC1CC(C2)C3")).has_bridgehead);  // adamantane
  CHECK(!structural_filters(P("c1ccc2ccccc2c1")).has_bridgehead);
  CHECK(!structural_filters(P("c1ccc2cc3ccccc3cc2c1")).has_bridgehead);
  CHECK(!structural_filters(P("C1CC2(C1)CCC2")).has_bridgehead);  // spiro only
  CHECK(!structural_filters(P("C1CCCCC1")).has_bridgehead);

  FilterReport r = structural_filters(P("CC(=O)NCCCCN"));
  CHECK(r.heavy_atoms == 9);
  CHECK(r.accepted(30));
  CHECK(!r.accepted(8));
  CHECK(!structural_filters(P("C1CC2CCC1C2")).accepted(30));
}

TEST_CASE("ring systems are extracted with substituents trimmed to H") {
  auto rs = ring_systems(P("Cc1ccccc1"));
  REQUIRE(rs.size() == 1);
  CHECK(canonical_key(rs[0]) == canonical_key(P("c1ccccc1")));

  auto biphenyl = ring_systems(P("c1ccc(-c2ccccc2)cc1"));
  REQUIRE(biphenyl.size() == 2);
  CHECK(canonical_key(biphenyl[0]) == canonical_key(P("c1ccccc1")));
  CHECK(canonical_key(biphenyl[1]) == canonical_key(P("c1ccccc1")));

  auto fused = ring_systems(P("CCc1ccc2ccccc2c1"));
  REQUIRE(fused.size() == 1);
  CHECK(canonical_key(fused[0]) == canonical_key(P("c1ccc2ccccc2c1")));

  CHECK(ring_systems(P("CCO")).empty());
  auto nmp = ring_systems(P("Cn1cccc1"));  // N-methylpyrrole strips to pyrrole
  REQUIRE(nmp.size() == 1);
  CHECK(canonical_key(nmp[0]) == canonical_key(P("c1cc[nH]c1")));
}

TEST_CASE("aromatic-aromatic single bonds are written explicitly") {
  Molecule biphenyl = P("c1ccc(-c2ccccc2)cc1");
  std::string c = write_canonical(biphenyl);
  Molecule back = P(c);
  CHECK(molecules_equal(biphenyl, back));
  int singles = 0;
  for (const Bond& b : back.bonds)
    if (b.order == BondOrder::Single) ++singles;
  CHECK(singles == 1);
}
