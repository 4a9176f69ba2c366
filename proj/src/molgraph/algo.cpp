#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>
#include <stdexcept>

#include "chemiq/molgraph.hpp"
#include "elements.hpp"
#include "mol_detail.hpp"

namespace chemiq {

int count_carbons(const Molecule& m) {
  int n = 0;
  for (const Atom& a : m.atoms)
    if (a.element == "C") ++n;
  return n;
}

int count_rings(const Molecule& m) {
  return static_cast<int>(m.bonds.size()) - static_cast<int>(m.atoms.size()) +
         m.component_count();
}

int shortest_path_bonds(const Molecule& m, int a, int b) {
  const int n = static_cast<int>(m.atoms.size());
  if (a < 0 || b < 0 || a >= n || b >= n)
    throw std::invalid_argument("shortest_path_bonds: atom index out of range");
  if (a == b)
    throw std::invalid_argument("shortest_path_bonds: identical endpoints");
  auto adj = m.adjacency();
  std::vector<int> dist(n, -1);
  std::queue<int> q;
  dist[a] = 0;
  q.push(a);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    if (u == b) return dist[u];
    for (int v : adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  throw std::invalid_argument("shortest_path_bonds: atoms are disconnected");
}

namespace {

std::vector<std::vector<int>> bond_matrix(const Molecule& m) {
  const int n = static_cast<int>(m.atoms.size());
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (const Bond& b : m.bonds) {
    a[b.a][b.b] = static_cast<int>(b.order);
    a[b.b][b.a] = static_cast<int>(b.order);
  }
  return a;
}

}  // namespace

long automorphism_count(const Molecule& m, long cap) {
  const int n = static_cast<int>(m.atoms.size());
  if (n == 0) return 1;
  std::vector<int> ranks = detail::refine_ranks(m, -1);
  auto a = bond_matrix(m);

  std::vector<int> perm(n, -1);
  std::vector<bool> used(n, false);
  long count = 0;

  std::function<bool(int)> dfs = [&](int i) -> bool {
    if (i == n) {
      ++count;
      return count >= cap;
    }
    for (int j = 0; j < n; ++j) {
      if (used[j] || ranks[j] != ranks[i]) continue;
      bool ok = true;
      for (int k = 0; k < i; ++k) {
        if (a[i][k] != a[j][perm[k]]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      perm[i] = j;
      used[j] = true;
      bool stop = dfs(i + 1);
      used[j] = false;
      perm[i] = -1;
      if (stop) return true;
    }
    return false;
  };
  dfs(0);
  return count;
}

std::optional<std::vector<int>> isomorphism_map(const Molecule& a,
                                                const Molecule& b) {
  if (a.atoms.size() != b.atoms.size() || a.bonds.size() != b.bonds.size())
    return std::nullopt;
  const int n = static_cast<int>(a.atoms.size());
  if (n == 0) return std::vector<int>{};

  // Refine the disjoint union so ranks are comparable across both molecules.
  Molecule uni;
  for (const Atom& at : a.atoms) uni.add_atom(at);
  for (const Atom& at : b.atoms) uni.add_atom(at);
  for (const Bond& bo : a.bonds) uni.add_bond(bo.a, bo.b, bo.order);
  for (const Bond& bo : b.bonds) uni.add_bond(bo.a + n, bo.b + n, bo.order);
  std::vector<int> ranks = detail::refine_ranks(uni, -1);

  auto am = bond_matrix(a);
  auto bm = bond_matrix(b);
  std::vector<int> perm(n, -1);  // b atom -> a atom
  std::vector<bool> used(n, false);

  std::function<bool(int)> dfs = [&](int i) -> bool {
    if (i == n) return true;
    for (int j = 0; j < n; ++j) {
      if (used[j] || ranks[j] != ranks[n + i]) continue;
      bool ok = true;
      for (int k = 0; k < i; ++k) {
        if (bm[i][k] != am[j][perm[k]]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      perm[i] = j;
      used[j] = true;
      if (dfs(i + 1)) return true;
      used[j] = false;
      perm[i] = -1;
    }
    return false;
  };
  if (!dfs(0)) return std::nullopt;
  return perm;
}

Formula molecular_formula(const Molecule& m) {
  Formula f;
  int h = 0;
  for (const Atom& a : m.atoms) {
    if (a.element == "*") continue;
    ++f.counts[a.element];
    h += a.h_count;
  }
  if (h > 0) f.counts["H"] += h;
  return f;
}

std::string Formula::hill() const {
  std::string out;
  auto append = [&out](const std::string& sym, int n) {
    out += sym;
    if (n > 1) out += std::to_string(n);
  };
  auto c = counts.find("C");
  if (c != counts.end()) {
    append("C", c->second);
    auto h = counts.find("H");
    if (h != counts.end()) append("H", h->second);
    for (const auto& [sym, n] : counts) {
      if (sym == "C" || sym == "H") continue;
      append(sym, n);
    }
    return out;
  }
  for (const auto& [sym, n] : counts) append(sym, n);
  return out;
}

double molecular_weight(const Molecule& m) {
  double w = 0.0;
  for (const Atom& a : m.atoms) {
    if (a.element == "*") continue;
    auto aw = detail::atomic_weight(a.element);
    if (!aw)
      throw std::invalid_argument("no atomic weight for element " + a.element);
    w += *aw + 1.008 * a.h_count;
  }
  return w;
}

std::vector<bool> detail::ring_bond_mask(const Molecule& m) {
  const int n = static_cast<int>(m.atoms.size());
  std::vector<bool> mask(m.bonds.size(), false);
  auto inc = m.incidence();
  for (size_t bi = 0; bi < m.bonds.size(); ++bi) {
    int src = m.bonds[bi].a, dst = m.bonds[bi].b;
    std::vector<bool> seen(n, false);
    std::queue<int> q;
    seen[src] = true;
    q.push(src);
    bool reach = false;
    while (!q.empty() && !reach) {
      int u = q.front();
      q.pop();
      for (int e : inc[u]) {
        if (e == static_cast<int>(bi)) continue;
        const Bond& b = m.bonds[e];
        int v = b.a == u ? b.b : b.a;
        if (seen[v]) continue;
        if (v == dst) {
          reach = true;
          break;
        }
        seen[v] = true;
        q.push(v);
      }
    }
    mask[bi] = reach;
  }
  return mask;
}

namespace {

// ring-bond subgraph adjacency
std::vector<std::vector<int>> ring_adjacency(const Molecule& m,
                                             const std::vector<bool>& mask) {
  std::vector<std::vector<int>> adj(m.atoms.size());
  for (size_t bi = 0; bi < m.bonds.size(); ++bi) {
    if (!mask[bi]) continue;
    adj[m.bonds[bi].a].push_back(m.bonds[bi].b);
    adj[m.bonds[bi].b].push_back(m.bonds[bi].a);
  }
  return adj;
}

bool is_spiro_atom(const std::vector<std::vector<int>>& radj, int u) {
  if (radj[u].size() < 4) return false;
  // connectivity of u's ring neighbors with u deleted
  std::vector<int> nbrs = radj[u];
  std::vector<bool> seen(radj.size(), false);
  seen[u] = true;
  std::queue<int> q;
  seen[nbrs[0]] = true;
  q.push(nbrs[0]);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (int y : radj[x]) {
      if (!seen[y]) {
        seen[y] = true;
        q.push(y);
      }
    }
  }
  for (int v : nbrs)
    if (!seen[v]) return true;
  return false;
}

// Max number of internally vertex-disjoint u-v paths of length >= 2 in the
// ring-bond subgraph, computed as max flow with unit node capacities and the
// direct u-v edge dropped. Stops once `need` paths are found.
int disjoint_paths(const std::vector<std::vector<int>>& radj, int u, int v,
                   int need) {
  const int n = static_cast<int>(radj.size());
  // node splitting: in(x) = 2x, out(x) = 2x+1
  struct E {
    int to, cap, rev;
  };
  std::vector<std::vector<E>> g(2 * n);
  auto add_edge = [&](int s, int t, int cap) {
    g[s].push_back({t, cap, static_cast<int>(g[t].size())});
    g[t].push_back({s, 0, static_cast<int>(g[s].size()) - 1});
  };
  const int big = 1000000;
  for (int x = 0; x < n; ++x)
    add_edge(2 * x, 2 * x + 1, (x == u || x == v) ? big : 1);
  for (int x = 0; x < n; ++x) {
    for (int y : radj[x]) {
      if (x > y) continue;
      if ((x == u && y == v) || (x == v && y == u)) continue;
      add_edge(2 * x + 1, 2 * y, 1);
      add_edge(2 * y + 1, 2 * x, 1);
    }
  }
  int source = 2 * u + 1, sink = 2 * v;
  int flow = 0;
  while (flow < need) {
    std::vector<std::pair<int, int>> prev(2 * n, {-1, -1});
    std::deque<int> q{source};
    prev[source] = {source, -1};
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      if (x == sink) break;
      for (size_t ei = 0; ei < g[x].size(); ++ei) {
        const E& e = g[x][ei];
        if (e.cap <= 0 || prev[e.to].first >= 0) continue;
        prev[e.to] = {x, static_cast<int>(ei)};
        q.push_back(e.to);
      }
    }
    if (prev[sink].first < 0) break;
    int x = sink;
    while (x != source) {
      auto [px, pei] = prev[x];
      E& e = g[px][pei];
      e.cap -= 1;
      g[x][e.rev].cap += 1;
      x = px;
    }
    ++flow;
  }
  return flow;
}

}  // namespace

FilterReport structural_filters(const Molecule& m) {
  FilterReport r;
  r.heavy_atoms = 0;
  for (const Atom& a : m.atoms) {
    if (a.element != "H") ++r.heavy_atoms;
    if (a.charge != 0) r.has_charge = true;
  }
  auto mask = detail::ring_bond_mask(m);
  auto radj = ring_adjacency(m, mask);

  const int n = static_cast<int>(m.atoms.size());
  std::vector<bool> spiro(n, false);
  for (int u = 0; u < n; ++u) {
    if (is_spiro_atom(radj, u)) {
      spiro[u] = true;
      r.has_spiro = true;
    }
  }
  for (int u = 0; u < n && !r.has_bridgehead; ++u) {
    if (radj[u].size() < 3 || spiro[u]) continue;
    for (int v = 0; v < n; ++v) {
      if (v == u || radj[v].size() < 3 || spiro[v]) continue;
      if (disjoint_paths(radj, u, v, 3) >= 3) {
        r.has_bridgehead = true;
        break;
      }
    }
  }
  return r;
}

std::vector<Molecule> ring_systems(const Molecule& m) {
  auto mask = detail::ring_bond_mask(m);
  auto radj = ring_adjacency(m, mask);
  const int n = static_cast<int>(m.atoms.size());
  std::vector<int> comp(n, -1);
  int nc = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0 || radj[s].empty()) continue;
    comp[s] = nc;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : radj[u]) {
        if (comp[v] < 0) {
          comp[v] = nc;
          q.push(v);
        }
      }
    }
    ++nc;
  }

  std::vector<Molecule> out(nc);
  std::vector<int> remap(n, -1);
  for (int i = 0; i < n; ++i) {
    if (comp[i] < 0) continue;
    Atom a = m.atoms[i];
    // substituents dropped below are folded back in as hydrogens
    remap[i] = out[comp[i]].add_atom(a);
  }
  for (size_t bi = 0; bi < m.bonds.size(); ++bi) {
    if (!mask[bi]) continue;
    const Bond& b = m.bonds[bi];
    out[comp[b.a]].add_bond(remap[b.a], remap[b.b], b.order);
  }
  auto full_adj = m.adjacency();
  for (int i = 0; i < n; ++i) {
    if (comp[i] < 0) continue;
    Molecule& sub = out[comp[i]];
    int lost = static_cast<int>(full_adj[i].size()) -
               static_cast<int>(sub.adjacency()[remap[i]].size());
    if (lost > 0) sub.atoms[remap[i]].h_count += lost;
  }
  return out;
}

}  // namespace chemiq
