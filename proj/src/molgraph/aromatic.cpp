#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include "chemiq/molgraph.hpp"
#include "elements.hpp"

namespace chemiq {

namespace {

// All simple cycles of length 5 or 6, each reported once as an ordered atom
// list starting from its lowest atom index. DFS restricted to atoms above the
// start index keeps every cycle anchored at its minimum; the sorted-set dedupe
// removes the two traversal directions.
std::vector<std::vector<int>> small_cycles(const Molecule& m) {
  auto adj = m.adjacency();
  const int n = static_cast<int>(m.atoms.size());
  std::vector<std::vector<int>> cycles;
  std::set<std::vector<int>> seen;
  std::vector<int> path;
  std::vector<bool> on_path(n, false);

  std::function<void(int, int)> dfs = [&](int start, int u) {
    if (path.size() > 6) return;
    for (int v : adj[u]) {
      if (v == start && path.size() >= 5) {
        std::vector<int> key = path;
        std::sort(key.begin(), key.end());
        if (seen.insert(key).second) cycles.push_back(path);
        continue;
      }
      if (v <= start || on_path[v]) continue;
      if (path.size() == 6) continue;
      path.push_back(v);
      on_path[v] = true;
      dfs(start, v);
      on_path[v] = false;
      path.pop_back();
    }
  };

  for (int s = 0; s < n; ++s) {
    path.assign(1, s);
    on_path.assign(n, false);
    on_path[s] = true;
    dfs(s, s);
  }
  return cycles;
}

struct AtomEnv {
  int heavy_deg = 0;
  int doubles = 0;
  int triples = 0;
  std::vector<int> double_partners;
};

// pi electrons atom `u` would contribute to candidate ring `in_ring`;
// -1 when the atom cannot sit in an aromatic ring at all.
int pi_contribution(const Molecule& m, const AtomEnv& env, int u,
                    const std::vector<bool>& in_ring) {
  const Atom& a = m.atoms[u];
  if (a.element == "*") return -1;
  if (env.triples > 0) return -1;
  if (env.doubles > 1) return -1;
  if (env.heavy_deg + a.h_count > 3) return -1;

  bool endo_double = false;
  bool exo_double = false;
  for (int p : env.double_partners) {
    if (in_ring[p])
      endo_double = true;
    else
      exo_double = true;
  }

  const std::string& e = a.element;
  if (e == "C") {
    if (endo_double) return 1;
    if (a.charge == -1 && !exo_double) return 2;
    if (a.charge == 1 && !exo_double) return 0;
    if (a.aromatic && a.charge == 0) return 1;
    if (exo_double && a.charge == 0) return 0;
    return -1;
  }
  if (e == "N" || e == "P") {
    if (endo_double) return 1;
    if (exo_double) return -1;
    if (a.charge == 0 && (a.h_count >= 1 || env.heavy_deg == 3)) return 2;
    if (a.charge == 0 && a.aromatic && env.heavy_deg == 2) return 1;
    if (a.charge == -1 && env.heavy_deg == 2 && a.h_count == 0) return 2;
    return -1;
  }
  if (e == "O" || e == "S") {
    if (endo_double) return a.charge == 1 ? 1 : -1;
    if (exo_double) return -1;
    if (a.charge == 0 && env.heavy_deg == 2 && a.h_count == 0) return 2;
    return -1;
  }
  if (e == "B") {
    if (endo_double) return 1;
    if (exo_double) return -1;
    if (a.charge == 0) return 0;
    return -1;
  }
  return -1;
}

}  // namespace

Molecule normalize_aromatic(const Molecule& m) {
  Molecule out = m;
  auto cycles = small_cycles(out);
  if (cycles.empty()) return out;

  bool changed = true;
  while (changed) {
    changed = false;
    auto inc = out.incidence();
    std::vector<AtomEnv> env(out.atoms.size());
    for (size_t i = 0; i < out.atoms.size(); ++i) {
      env[i].heavy_deg = static_cast<int>(inc[i].size());
      for (int bi : inc[i]) {
        const Bond& b = out.bonds[bi];
        if (b.order == BondOrder::Double) {
          ++env[i].doubles;
          env[i].double_partners.push_back(b.a == static_cast<int>(i) ? b.b : b.a);
        } else if (b.order == BondOrder::Triple) {
          ++env[i].triples;
        }
      }
    }

    for (const std::vector<int>& ring : cycles) {
      std::vector<bool> in_ring(out.atoms.size(), false);
      for (int u : ring) in_ring[u] = true;

      bool already = true;
      for (int u : ring)
        if (!out.atoms[u].aromatic) already = false;
      if (already) continue;

      int pi = 0;
      bool ok = true;
      for (int u : ring) {
        int c = pi_contribution(out, env[u], u, in_ring);
        if (c < 0) {
          ok = false;
          break;
        }
        pi += c;
      }
      if (!ok || pi != 6) continue;

      for (int u : ring) out.atoms[u].aromatic = true;
      for (size_t k = 0; k < ring.size(); ++k) {
        int a = ring[k];
        int b = ring[(k + 1) % ring.size()];
        int bi = out.bond_between(a, b);
        out.bonds[bi].order = BondOrder::Aromatic;
      }
      changed = true;
    }
  }
  return out;
}

std::string canonical_key(const Molecule& m) {
  return write_canonical(normalize_aromatic(m));
}

bool molecules_equal(const Molecule& a, const Molecule& b) {
  return canonical_key(a) == canonical_key(b);
}

}  // namespace chemiq
