#include <algorithm>
#include <cctype>
#include <map>

#include "chemiq/molgraph.hpp"
#include "elements.hpp"
#include "mol_detail.hpp"

namespace chemiq {

int Molecule::add_atom(const Atom& a) {
  atoms.push_back(a);
  return static_cast<int>(atoms.size()) - 1;
}

int Molecule::add_bond(int a, int b, BondOrder order) {
  bonds.push_back(Bond{a, b, order});
  return static_cast<int>(bonds.size()) - 1;
}

int Molecule::bond_between(int a, int b) const {
  for (size_t i = 0; i < bonds.size(); ++i) {
    if ((bonds[i].a == a && bonds[i].b == b) || (bonds[i].a == b && bonds[i].b == a))
      return static_cast<int>(i);
  }
  return -1;
}

std::vector<std::vector<int>> Molecule::adjacency() const {
  std::vector<std::vector<int>> adj(atoms.size());
  for (const Bond& b : bonds) {
    adj[b.a].push_back(b.b);
    adj[b.b].push_back(b.a);
  }
  return adj;
}

std::vector<std::vector<int>> Molecule::incidence() const {
  std::vector<std::vector<int>> inc(atoms.size());
  for (size_t i = 0; i < bonds.size(); ++i) {
    inc[bonds[i].a].push_back(static_cast<int>(i));
    inc[bonds[i].b].push_back(static_cast<int>(i));
  }
  return inc;
}

int Molecule::heavy_count() const { return static_cast<int>(atoms.size()); }

std::vector<int> Molecule::component_labels() const {
  std::vector<int> label(atoms.size(), -1);
  auto adj = adjacency();
  int next = 0;
  std::vector<int> stack;
  for (size_t s = 0; s < atoms.size(); ++s) {
    if (label[s] != -1) continue;
    label[s] = next;
    stack.push_back(static_cast<int>(s));
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj[u]) {
        if (label[v] == -1) {
          label[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return label;
}

int Molecule::component_count() const {
  auto labels = component_labels();
  int mx = -1;
  for (int l : labels) mx = std::max(mx, l);
  return mx + 1;
}

namespace detail {

std::optional<int> default_hydrogens(const Molecule& m,
                                     const std::vector<std::vector<int>>& incidence,
                                     int atom) {
  const Atom& a = m.atoms[atom];
  if (a.element == "*") return 0;
  const std::vector<int>& valences = valence_list(a.element);
  if (valences.empty()) return std::nullopt;  // outside organic subset
  if (a.aromatic) {
    int conn = static_cast<int>(incidence[atom].size());
    int pi = 0;
    if (a.element == "C") pi = 1;
    if ((a.element == "N" || a.element == "P") && conn == 2) pi = 1;
    int h = valences.front() - conn - pi;
    if (h < 0) return std::nullopt;
    return h;
  }
  int sum = 0;
  for (int bi : incidence[atom]) {
    BondOrder o = m.bonds[bi].order;
    sum += (o == BondOrder::Aromatic) ? 1 : static_cast<int>(o);
  }
  for (int v : valences) {
    if (v >= sum) return v - sum;
  }
  return std::nullopt;
}

}  // namespace detail

namespace {

using detail::aromatic_organic;
using detail::bracket_aromatic_to_element;
using detail::is_known_element;
using detail::organic_subset;

struct RawAtom {
  Atom atom;
  bool bracket = false;
  size_t pos = 0;
};

struct RawBond {
  int a;
  int b;
  char spec;  // 0 unspecified, else '-', '=', '#', ':'
  size_t pos;
};

struct Parser {
  const std::string& s;
  std::vector<RawAtom> atoms;
  std::vector<RawBond> rawbonds;
  std::vector<int> stack;
  int prev = -1;
  char pending = 0;
  size_t pending_pos = 0;
  std::map<int, std::pair<int, std::pair<char, size_t>>> open_rings;

  explicit Parser(const std::string& str) : s(str) {}

  [[noreturn]] void fail(ParseError::Kind kind, size_t pos, const std::string& msg) {
    throw ParseError(kind, pos, msg + " (position " + std::to_string(pos) + ")");
  }

  void add_atom(RawAtom ra) {
    int idx = static_cast<int>(atoms.size());
    atoms.push_back(ra);
    if (prev >= 0) {
      rawbonds.push_back(RawBond{prev, idx, pending, ra.pos});
    } else if (pending != 0) {
      fail(ParseError::Kind::DanglingBond, pending_pos, "bond symbol with no preceding atom");
    }
    pending = 0;
    prev = idx;
  }

  void handle_ring(int num, size_t pos) {
    if (prev < 0)
      fail(ParseError::Kind::DanglingBond, pos, "ring closure before any atom");
    auto it = open_rings.find(num);
    if (it == open_rings.end()) {
      open_rings[num] = {prev, {pending, pos}};
      pending = 0;
      return;
    }
    int other = it->second.first;
    char other_spec = it->second.second.first;
    open_rings.erase(it);
    if (other == prev)
      fail(ParseError::Kind::DuplicateBond, pos, "ring bond from an atom to itself");
    for (const RawBond& rb : rawbonds) {
      if ((rb.a == other && rb.b == prev) || (rb.a == prev && rb.b == other))
        fail(ParseError::Kind::DuplicateBond, pos, "duplicate bond via ring closure");
    }
    char spec = 0;
    if (other_spec != 0 && pending != 0 && other_spec != pending)
      fail(ParseError::Kind::RingBondMismatch, pos,
           "ring closure bond symbols disagree");
    spec = other_spec != 0 ? other_spec : pending;
    rawbonds.push_back(RawBond{other, prev, spec, pos});
    pending = 0;
  }

  void parse_bracket(size_t& i) {
    size_t start = i;
    size_t j = i + 1;
    auto need = [&](bool cond, const std::string& msg) {
      if (!cond) fail(ParseError::Kind::BracketSyntax, start, msg);
    };
    need(j < s.size(), "unterminated bracket atom");
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;  // isotope
    need(j < s.size(), "unterminated bracket atom");

    RawAtom ra;
    ra.bracket = true;
    ra.pos = start;
    if (s[j] == '*') {
      ra.atom.element = "*";
      ++j;
    } else if (std::isupper(static_cast<unsigned char>(s[j]))) {
      std::string sym(1, s[j]);
      if (j + 1 < s.size() && std::islower(static_cast<unsigned char>(s[j + 1]))) {
        std::string two = sym + s[j + 1];
        if (is_known_element(two)) {
          sym = two;
          ++j;
        }
      }
      ++j;
      if (!is_known_element(sym))
        fail(ParseError::Kind::UnknownElement, start, "unknown element '" + sym + "'");
      ra.atom.element = sym;
    } else if (std::islower(static_cast<unsigned char>(s[j]))) {
      std::string low(1, s[j]);
      if (j + 1 < s.size() && std::islower(static_cast<unsigned char>(s[j + 1]))) {
        std::string two = low + s[j + 1];
        if (bracket_aromatic_to_element(two)) {
          low = two;
          ++j;
        }
      }
      ++j;
      auto elem = bracket_aromatic_to_element(low);
      if (!elem)
        fail(ParseError::Kind::UnknownElement, start,
             "unknown aromatic symbol '" + low + "'");
      ra.atom.element = *elem;
      ra.atom.aromatic = true;
    } else {
      fail(ParseError::Kind::BracketSyntax, start, "expected element symbol in bracket");
    }

    need(j < s.size(), "unterminated bracket atom");
    while (j < s.size() && s[j] == '@') ++j;  // chirality discarded
    need(j < s.size(), "unterminated bracket atom");

    if (s[j] == 'H') {
      ++j;
      int h = 1;
      if (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
        h = 0;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
          h = h * 10 + (s[j++] - '0');
      }
      ra.atom.h_count = h;
    }
    need(j < s.size(), "unterminated bracket atom");

    if (s[j] == '+' || s[j] == '-') {
      char sign = s[j];
      int n = 0;
      while (j < s.size() && s[j] == sign) {
        ++n;
        ++j;
      }
      if (n == 1 && j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
        n = 0;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
          n = n * 10 + (s[j++] - '0');
      }
      ra.atom.charge = sign == '+' ? n : -n;
    }
    need(j < s.size(), "unterminated bracket atom");

    if (s[j] == ':') {
      ++j;
      need(j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])),
           "atom class expects digits");
      int n = 0;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
        n = n * 10 + (s[j++] - '0');
      ra.atom.map_class = n;
    }
    need(j < s.size() && s[j] == ']', "expected ']' to close bracket atom");
    add_atom(ra);
    i = j + 1;
  }

  void run() {
    size_t i = 0;
    while (i < s.size()) {
      char c = s[i];
      switch (c) {
        case '(':
          if (prev < 0)
            fail(ParseError::Kind::UnmatchedParenthesis, i, "branch before any atom");
          if (pending != 0)
            fail(ParseError::Kind::DanglingBond, pending_pos, "bond symbol before '('");
          stack.push_back(prev);
          ++i;
          break;
        case ')':
          if (pending != 0)
            fail(ParseError::Kind::DanglingBond, pending_pos, "bond symbol before ')'");
          if (stack.empty())
            fail(ParseError::Kind::UnmatchedParenthesis, i, "unmatched ')'");
          prev = stack.back();
          stack.pop_back();
          ++i;
          break;
        case '.':
          if (pending != 0)
            fail(ParseError::Kind::DanglingBond, pending_pos, "bond symbol before '.'");
          prev = -1;
          ++i;
          break;
        case '-':
        case '=':
        case '#':
        case ':':
        case '/':
        case '\\':
          if (pending != 0)
            fail(ParseError::Kind::DanglingBond, pending_pos, "two bond symbols in a row");
          pending = (c == '/' || c == '\\') ? '-' : c;  // stereo slashes discarded
          pending_pos = i;
          ++i;
          break;
        case '%': {
          if (i + 2 >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i + 1])) ||
              !std::isdigit(static_cast<unsigned char>(s[i + 2])))
            fail(ParseError::Kind::BadCharacter, i, "'%' expects two digits");
          int num = (s[i + 1] - '0') * 10 + (s[i + 2] - '0');
          handle_ring(num, i);
          i += 3;
          break;
        }
        case '[':
          parse_bracket(i);
          break;
        case '*': {
          RawAtom ra;
          ra.atom.element = "*";
          ra.pos = i;
          add_atom(ra);
          ++i;
          break;
        }
        default:
          if (std::isdigit(static_cast<unsigned char>(c))) {
            handle_ring(c - '0', i);
            ++i;
            break;
          }
          if (std::isupper(static_cast<unsigned char>(c))) {
            std::string sym(1, c);
            if ((c == 'C' || c == 'B') && i + 1 < s.size() &&
                (s[i + 1] == 'l' || s[i + 1] == 'r')) {
              std::string two = sym + s[i + 1];
              if (two == "Cl" || two == "Br") sym = two;
            }
            if (!organic_subset(sym))
              fail(ParseError::Kind::UnknownElement, i,
                   "element '" + sym + "' must be written in brackets");
            RawAtom ra;
            ra.atom.element = sym;
            ra.pos = i;
            add_atom(ra);
            i += sym.size();
            break;
          }
          if (std::islower(static_cast<unsigned char>(c))) {
            std::string sym(1, c);
            if (!aromatic_organic(sym))
              fail(ParseError::Kind::BadCharacter, i,
                   std::string("unexpected character '") + c + "'");
            RawAtom ra;
            ra.atom.element = std::string(1, std::toupper(static_cast<unsigned char>(c)));
            ra.atom.aromatic = true;
            ra.pos = i;
            add_atom(ra);
            ++i;
            break;
          }
          fail(ParseError::Kind::BadCharacter, i,
               std::string("unexpected character '") + c + "'");
      }
    }
    if (pending != 0)
      fail(ParseError::Kind::DanglingBond, pending_pos, "dangling bond at end of input");
    if (!stack.empty())
      fail(ParseError::Kind::UnmatchedParenthesis, s.size(), "unclosed '('");
    if (!open_rings.empty())
      fail(ParseError::Kind::UnclosedRing, open_rings.begin()->second.second.second,
           "unclosed ring closure " + std::to_string(open_rings.begin()->first));
    if (atoms.empty())
      fail(ParseError::Kind::EmptyInput, 0, "no atoms in input");
  }

  Molecule finalize() {
    Molecule m;
    for (const RawAtom& ra : atoms) m.atoms.push_back(ra.atom);
    std::vector<size_t> unspec_aromatic;
    for (const RawBond& rb : rawbonds) {
      BondOrder order;
      bool unspec = false;
      switch (rb.spec) {
        case '-': order = BondOrder::Single; break;
        case '=': order = BondOrder::Double; break;
        case '#': order = BondOrder::Triple; break;
        case ':': order = BondOrder::Aromatic; break;
        default:
          unspec = true;
          order = (m.atoms[rb.a].aromatic && m.atoms[rb.b].aromatic)
                      ? BondOrder::Aromatic
                      : BondOrder::Single;
      }
      if (m.bond_between(rb.a, rb.b) != -1)
        fail(ParseError::Kind::DuplicateBond, rb.pos, "duplicate bond between atoms");
      int bi = m.add_bond(rb.a, rb.b, order);
      if (unspec && order == BondOrder::Aromatic)
        unspec_aromatic.push_back(static_cast<size_t>(bi));
    }

    // An unspecified bond between aromatic atoms is aromatic only inside a
    // ring; the biaryl link in c1ccccc1c1ccccc1 is a single bond.
    if (!unspec_aromatic.empty()) {
      auto ring = detail::ring_bond_mask(m);
      for (size_t bi : unspec_aromatic)
        if (!ring[bi]) m.bonds[bi].order = BondOrder::Single;
    }

    // Fold explicit [H] atoms into the neighbor's hydrogen count.
    std::vector<int> folded(m.atoms.size(), 0);
    std::vector<bool> drop(m.atoms.size(), false);
    {
      auto inc = m.incidence();
      for (size_t i = 0; i < m.atoms.size(); ++i) {
        const Atom& a = m.atoms[i];
        if (a.element != "H" || a.aromatic || a.charge != 0 || a.map_class != 0 ||
            a.h_count != 0)
          continue;
        if (inc[i].size() != 1) continue;
        const Bond& b = m.bonds[inc[i][0]];
        if (b.order != BondOrder::Single) continue;
        int nbr = b.a == static_cast<int>(i) ? b.b : b.a;
        if (m.atoms[nbr].element == "H") continue;
        drop[i] = true;
        folded[nbr] += 1;
      }
    }
    bool any_drop = false;
    for (bool d : drop) any_drop |= d;
    if (any_drop) {
      Molecule m2;
      std::vector<int> remap(m.atoms.size(), -1);
      std::vector<int> folded2;
      std::vector<bool> bracket2;
      for (size_t i = 0; i < m.atoms.size(); ++i) {
        if (drop[i]) continue;
        remap[i] = m2.add_atom(m.atoms[i]);
        folded2.push_back(folded[i]);
        bracket2.push_back(atoms[i].bracket);
      }
      for (const Bond& b : m.bonds) {
        if (remap[b.a] < 0 || remap[b.b] < 0) continue;
        m2.add_bond(remap[b.a], remap[b.b], b.order);
      }
      m = std::move(m2);
      finalize_hydrogens(m, folded2, bracket2);
      return m;
    }
    std::vector<bool> bracket_flags;
    for (const RawAtom& ra : atoms) bracket_flags.push_back(ra.bracket);
    finalize_hydrogens(m, folded, bracket_flags);
    return m;
  }

  void finalize_hydrogens(Molecule& m, const std::vector<int>& folded,
                          const std::vector<bool>& bracket) {
    auto inc = m.incidence();
    for (size_t i = 0; i < m.atoms.size(); ++i) {
      Atom& a = m.atoms[i];
      if (bracket[i]) {
        a.h_count += folded[i];
        continue;
      }
      // folded hydrogens on a bare atom occupy valence like single bonds
      auto base = bare_default_with_extra(m, inc, static_cast<int>(i), folded[i]);
      if (!base)
        fail(ParseError::Kind::ValenceOverflow, atoms.empty() ? 0 : atoms[0].pos,
             "valence overflow at atom index " + std::to_string(i) + " (" +
                 a.element + ")");
      a.h_count = folded[i] + *base;
    }
  }

  static std::optional<int> bare_default_with_extra(
      const Molecule& m, const std::vector<std::vector<int>>& inc, int atom,
      int extra) {
    const Atom& a = m.atoms[atom];
    if (a.element == "*") return 0;
    const std::vector<int>& valences = detail::valence_list(a.element);
    if (valences.empty()) return std::nullopt;
    if (a.aromatic) {
      int conn = static_cast<int>(inc[atom].size()) + extra;
      int pi = 0;
      if (a.element == "C") pi = 1;
      if ((a.element == "N" || a.element == "P") && conn == 2) pi = 1;
      int h = valences.front() - conn - pi;
      if (h < 0) return std::nullopt;
      return h;
    }
    int sum = extra;
    for (int bi : inc[atom]) {
      BondOrder o = m.bonds[bi].order;
      sum += (o == BondOrder::Aromatic) ? 1 : static_cast<int>(o);
    }
    for (int v : valences) {
      if (v >= sum) return v - sum;
    }
    return std::nullopt;
  }
};

}  // namespace

Molecule parse_smiles(const std::string& smiles) {
  std::string cleaned = trim(smiles);
  Parser p(cleaned);
  p.run();
  return p.finalize();
}

}  // namespace chemiq
