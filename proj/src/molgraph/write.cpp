#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>
#include <tuple>

#include "chemiq/molgraph.hpp"
#include "elements.hpp"
#include "mol_detail.hpp"

namespace chemiq {

namespace {

struct SubMol {
  Molecule mol;
  std::vector<int> orig;
};

std::vector<SubMol> split_components(const Molecule& m) {
  auto labels = m.component_labels();
  int n = 0;
  for (int l : labels) n = std::max(n, l + 1);
  std::vector<SubMol> subs(n);
  std::vector<int> remap(m.atoms.size(), -1);
  for (size_t i = 0; i < m.atoms.size(); ++i) {
    int c = labels[i];
    remap[i] = subs[c].mol.add_atom(m.atoms[i]);
    subs[c].orig.push_back(static_cast<int>(i));
  }
  for (const Bond& b : m.bonds)
    subs[labels[b.a]].mol.add_bond(remap[b.a], remap[b.b], b.order);
  return subs;
}

template <typename Key>
std::vector<int> dense_ranks(const std::vector<Key>& keys) {
  std::vector<int> idx(keys.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return keys[a] < keys[b]; });
  std::vector<int> ranks(keys.size(), 0);
  int r = 0;
  for (size_t i = 0; i < idx.size(); ++i) {
    if (i > 0 && keys[idx[i - 1]] < keys[idx[i]]) ++r;
    ranks[idx[i]] = r;
  }
  return ranks;
}

int bond_code(BondOrder o) { return static_cast<int>(o); }

}  // namespace

std::vector<int> detail::refine_ranks(const Molecule& m, int individualized) {
  const size_t n = m.atoms.size();
  auto adj = m.adjacency();
  auto inc = m.incidence();

  using K0 = std::tuple<int, int, std::string, int, int, int, int>;
  std::vector<K0> init(n);
  for (size_t i = 0; i < n; ++i) {
    const Atom& a = m.atoms[i];
    int eclass = a.element == "*" ? 0 : (a.element == "C" ? 1 : 2);
    std::string elem = eclass == 2 ? a.element : "";
    int ind = (static_cast<int>(i) == individualized) ? 0 : 1;
    init[i] = K0{ind, eclass, elem, a.aromatic ? 1 : 0, a.charge, a.h_count,
                 static_cast<int>(adj[i].size())};
  }
  std::vector<int> ranks = dense_ranks(init);

  int classes = 1 + *std::max_element(ranks.begin(), ranks.end());
  while (true) {
    using K1 = std::pair<int, std::vector<std::pair<int, int>>>;
    std::vector<K1> keys(n);
    for (size_t i = 0; i < n; ++i) {
      std::vector<std::pair<int, int>> nb;
      for (int bi : inc[i]) {
        const Bond& b = m.bonds[bi];
        int other = b.a == static_cast<int>(i) ? b.b : b.a;
        nb.emplace_back(bond_code(b.order), ranks[other]);
      }
      std::sort(nb.begin(), nb.end());
      keys[i] = {ranks[i], std::move(nb)};
    }
    std::vector<int> next = dense_ranks(keys);
    int next_classes = 1 + *std::max_element(next.begin(), next.end());
    ranks = std::move(next);
    if (next_classes == classes) break;
    classes = next_classes;
  }
  return ranks;
}

namespace {

std::string charge_suffix(int charge) {
  if (charge == 0) return "";
  if (charge == 1) return "+";
  if (charge == -1) return "-";
  if (charge > 0) return "+" + std::to_string(charge);
  return "-" + std::to_string(-charge);
}

std::string lowercase(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string atom_token(const Molecule& m, const std::vector<std::vector<int>>& inc,
                       int u) {
  const Atom& a = m.atoms[u];
  bool bare_ok = a.charge == 0 && a.map_class == 0;
  if (bare_ok) {
    if (a.element == "*") {
      if (a.h_count == 0) return "*";
      bare_ok = false;
    } else if (detail::organic_subset(a.element)) {
      auto dflt = detail::default_hydrogens(m, inc, u);
      if (dflt && *dflt == a.h_count)
        return a.aromatic ? lowercase(a.element) : a.element;
      bare_ok = false;
    } else {
      bare_ok = false;
    }
  }
  std::string sym = a.aromatic ? lowercase(a.element) : a.element;
  std::string out = "[" + sym;
  if (a.h_count == 1)
    out += "H";
  else if (a.h_count > 1)
    out += "H" + std::to_string(a.h_count);
  out += charge_suffix(a.charge);
  if (a.map_class != 0) out += ":" + std::to_string(a.map_class);
  out += "]";
  return out;
}

// bond symbol on emission; empty when the parser would infer it
std::string bond_symbol(const Molecule& m, int bi) {
  const Bond& b = m.bonds[bi];
  bool both_aromatic = m.atoms[b.a].aromatic && m.atoms[b.b].aromatic;
  switch (b.order) {
    case BondOrder::Single: return both_aromatic ? "-" : "";
    case BondOrder::Double: return "=";
    case BondOrder::Triple: return "#";
    case BondOrder::Aromatic: return both_aromatic ? "" : ":";
  }
  return "";
}

bool shorter_then_lex(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// DFS traversal enumerator. In MinRank mode it visits neighbors in canonical
// rank order, branching over rank ties and keeping the shortest assembled
// string (ties broken lexicographically). In Random mode it draws one
// uniformly random traversal. Ring-closure digits are allocated smallest-free
// at the opening atom, in visit order, and reused after closing.
class Emitter {
 public:
  enum class Mode { MinRank, Random };

  Emitter(const Molecule& m, Mode mode, const std::vector<int>* ranks,
          RandomSource* rng)
      : m_(m),
        adj_(m.adjacency()),
        inc_(m.incidence()),
        mode_(mode),
        ranks_(ranks),
        rng_(rng),
        visited_(m.atoms.size(), false),
        visit_index_(m.atoms.size(), -1),
        parent_(m.atoms.size(), -1),
        kids_(m.atoms.size()),
        backs_(m.atoms.size()) {}

  std::string run(int root) {
    best_.clear();
    have_best_ = false;
    steps_ = 0;
    visit(root, -1);
    chain_.push_back(root);
    step();
    chain_.pop_back();
    unvisit(root);
    if (!have_best_) throw std::logic_error("emission produced no traversal");
    return best_;
  }

 private:
  void visit(int u, int par) {
    visited_[u] = true;
    parent_[u] = par;
    visit_index_[u] = static_cast<int>(order_.size());
    order_.push_back(u);
    for (int v : adj_[u]) {
      if (v != par && visited_[v]) backs_[u].push_back(v);
    }
    std::sort(backs_[u].begin(), backs_[u].end(),
              [&](int a, int b) { return visit_index_[a] < visit_index_[b]; });
  }

  void unvisit(int u) {
    visited_[u] = false;
    visit_index_[u] = -1;
    parent_[u] = -1;
    backs_[u].clear();
    order_.pop_back();
  }

  void step() {
    if (++steps_ > 2000000)
      throw std::runtime_error("canonical emission branch limit exceeded");
    if (chain_.empty()) {
      finish();
      return;
    }
    int u = chain_.back();
    std::vector<int> cands;
    for (int v : adj_[u])
      if (!visited_[v]) cands.push_back(v);
    if (cands.empty()) {
      chain_.pop_back();
      step();
      chain_.push_back(u);
      return;
    }
    if (mode_ == Mode::Random) {
      int pick = cands[rng_->uniform_below(static_cast<int>(cands.size()))];
      descend(u, pick);
      return;
    }
    int best_rank = (*ranks_)[cands[0]];
    for (int v : cands) best_rank = std::min(best_rank, (*ranks_)[v]);
    for (int v : cands) {
      if ((*ranks_)[v] != best_rank) continue;
      descend(u, v);
      if (mode_ == Mode::Random) break;
    }
  }

  void descend(int u, int v) {
    kids_[u].push_back(v);
    visit(v, u);
    chain_.push_back(v);
    step();
    chain_.pop_back();
    unvisit(v);
    kids_[u].pop_back();
  }

  void finish() {
    if (order_.size() != m_.atoms.size())
      throw std::logic_error("component traversal incomplete");
    std::string s = assemble();
    if (mode_ == Mode::Random) {
      best_ = s;
      have_best_ = true;
      return;
    }
    if (!have_best_ || shorter_then_lex(s, best_)) {
      best_ = s;
      have_best_ = true;
    }
  }

  std::string digit_token(int d) const {
    if (d <= 9) return std::string(1, static_cast<char>('0' + d));
    if (d <= 99) return "%" + std::to_string(d);
    throw std::runtime_error("ring closure digits exhausted");
  }

  std::string assemble() {
    const size_t n = m_.atoms.size();
    std::vector<std::vector<int>> open_at(n), close_at(n);
    for (int u : order_) {
      for (int v : backs_[u]) {  // v visited before u
        open_at[v].push_back(u);
        close_at[u].push_back(v);
      }
    }
    for (size_t i = 0; i < n; ++i) {
      std::sort(open_at[i].begin(), open_at[i].end(), [&](int a, int b) {
        return visit_index_[a] < visit_index_[b];
      });
      std::sort(close_at[i].begin(), close_at[i].end(), [&](int a, int b) {
        return visit_index_[a] < visit_index_[b];
      });
    }

    // digit assignment in emission order
    std::map<std::pair<int, int>, int> digit;  // (open atom, close atom) -> digit
    std::vector<bool> in_use(100, false);
    for (int a : order_) {
      for (int v : close_at[a]) {
        int d = digit.at({v, a});
        in_use[d] = false;
      }
      for (int u : open_at[a]) {
        int d = 1;
        while (d < 100 && in_use[d]) ++d;
        if (d >= 100) throw std::runtime_error("ring closure digits exhausted");
        in_use[d] = true;
        digit[{a, u}] = d;
      }
    }

    std::string out;
    assemble_atom(order_[0], -1, open_at, close_at, digit, out);
    return out;
  }

  void assemble_atom(int u, int from_bond,
                     const std::vector<std::vector<int>>& open_at,
                     const std::vector<std::vector<int>>& close_at,
                     const std::map<std::pair<int, int>, int>& digit,
                     std::string& out) {
    if (from_bond >= 0) out += bond_symbol(m_, from_bond);
    out += atom_token(m_, inc_, u);
    for (int v : close_at[u]) out += digit_token(digit.at({v, u}));
    for (int v : open_at[u]) {
      int bi = m_.bond_between(u, v);
      out += bond_symbol(m_, bi);
      out += digit_token(digit.at({u, v}));
    }
    const std::vector<int>& ks = kids_[u];
    for (size_t j = 0; j < ks.size(); ++j) {
      int v = ks[j];
      int bi = m_.bond_between(u, v);
      if (j + 1 < ks.size()) {
        out += "(";
        assemble_atom(v, bi, open_at, close_at, digit, out);
        out += ")";
      } else {
        assemble_atom(v, bi, open_at, close_at, digit, out);
      }
    }
  }

  const Molecule& m_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::vector<int>> inc_;
  Mode mode_;
  const std::vector<int>* ranks_;
  RandomSource* rng_;

  std::vector<bool> visited_;
  std::vector<int> visit_index_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> kids_;
  std::vector<std::vector<int>> backs_;
  std::vector<int> order_;
  std::vector<int> chain_;

  std::string best_;
  bool have_best_ = false;
  long steps_ = 0;
};

// Every atom is tried as the root and the shortest spelling wins, with ties
// broken lexicographically. Preferring the shortest string keeps chains
// unbranched ("CCO" rather than "C(C)O" for ethanol), which a bare
// lexicographic minimum would not, since '(' sorts before every atom symbol.
std::string canonical_component(const Molecule& mol) {
  std::string best;
  bool have = false;
  for (size_t i = 0; i < mol.atoms.size(); ++i) {
    std::vector<int> ranks = detail::refine_ranks(mol, static_cast<int>(i));
    Emitter em(mol, Emitter::Mode::MinRank, &ranks, nullptr);
    std::string s = em.run(static_cast<int>(i));
    if (!have || shorter_then_lex(s, best)) {
      best = s;
      have = true;
    }
  }
  return best;
}

std::string rooted_component(const Molecule& mol, int root) {
  std::vector<int> ranks = detail::refine_ranks(mol, root);
  Emitter em(mol, Emitter::Mode::MinRank, &ranks, nullptr);
  return em.run(root);
}

}  // namespace

std::string write_canonical(const Molecule& m) {
  if (m.atoms.empty()) return "";
  auto subs = split_components(m);
  std::vector<std::string> parts;
  for (const SubMol& sub : subs) parts.push_back(canonical_component(sub.mol));
  std::sort(parts.begin(), parts.end());
  std::string out = parts[0];
  for (size_t i = 1; i < parts.size(); ++i) out += "." + parts[i];
  return out;
}

std::string write_rooted_canonical(const Molecule& m, int root) {
  if (root < 0 || root >= static_cast<int>(m.atoms.size()))
    throw std::invalid_argument("write_rooted_canonical: root out of range");
  auto subs = split_components(m);
  auto labels = m.component_labels();
  int rc = labels[root];
  int local = 0;
  for (int i = 0; i < root; ++i)
    if (labels[i] == rc) ++local;
  std::string out = rooted_component(subs[rc].mol, local);
  std::vector<std::string> rest;
  for (size_t c = 0; c < subs.size(); ++c) {
    if (static_cast<int>(c) == rc) continue;
    rest.push_back(canonical_component(subs[c].mol));
  }
  std::sort(rest.begin(), rest.end());
  for (const std::string& p : rest) out += "." + p;
  return out;
}

std::string write_random(const Molecule& m, RandomSource& rng) {
  if (m.atoms.empty()) return "";
  auto subs = split_components(m);
  std::vector<int> comp_order(subs.size());
  for (size_t i = 0; i < subs.size(); ++i) comp_order[i] = static_cast<int>(i);
  rng.shuffle(comp_order);
  std::string out;
  for (size_t k = 0; k < comp_order.size(); ++k) {
    const SubMol& sub = subs[comp_order[k]];
    int root = rng.uniform_below(static_cast<int>(sub.mol.atoms.size()));
    Emitter em(sub.mol, Emitter::Mode::Random, nullptr, &rng);
    if (k > 0) out += ".";
    out += em.run(root);
  }
  return out;
}

}  // namespace chemiq
