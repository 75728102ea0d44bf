//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrbench/chemgraph/canonical.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ocsrbench/chemgraph/elements.hpp"
#include "ocsrbench/error.hpp"

namespace ocsrbench::chemgraph {
namespace {

using Colors = std::vector<int>;

struct Graph {
  std::size_t n = 0;
  std::vector<int> element;
  std::vector<int> charge;
  // (neighbor, bond order) sorted by neighbor
  std::vector<std::vector<std::pair<std::size_t, int>>> adj;
};

Graph make_graph(const Molecule &m) {
  Graph g;
  g.n = m.num_atoms();
  g.element.resize(g.n);
  g.charge.resize(g.n);
  g.adj.resize(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    g.element[i] = atomic_number(m.atom(i).element).value_or(0);
    g.charge[i] = m.atom(i).charge;
  }
  for (const Bond &b: m.bonds()) {
    const int order = static_cast<int>(b.order);
    g.adj[b.a].emplace_back(b.b, order);
    g.adj[b.b].emplace_back(b.a, order);
  }
  for (auto &nbrs: g.adj) {
    std::sort(nbrs.begin(), nbrs.end());
  }
  return g;
}

// Replaces each key by its rank among the distinct keys. Ranks depend only
// on key values, never on atom indices.
template <class Key>
Colors rank_keys(const std::vector<Key> &keys) {
  std::vector<Key> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Colors out(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    out[i] = static_cast<int>(
        std::lower_bound(sorted.begin(), sorted.end(), keys[i])
        - sorted.begin());
  }
  return out;
}

int count_cells(const Colors &c) {
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

Colors initial_colors(const Graph &g) {
  using Key = std::tuple<int, int, std::size_t, std::vector<int>>;
  std::vector<Key> keys(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    std::vector<int> orders;
    for (auto [_, order]: g.adj[i]) {
      orders.push_back(order);
    }
    std::sort(orders.begin(), orders.end());
    keys[i] = { g.element[i], g.charge[i], g.adj[i].size(), orders };
  }
  return rank_keys(keys);
}

// Iterated neighbor refinement to the coarsest equitable partition finer
// than `colors`.
Colors refine(const Graph &g, Colors colors) {
  using Key = std::pair<int, std::vector<std::pair<int, int>>>;
  int cells = count_cells(colors);
  while (true) {
    std::vector<Key> keys(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
      std::vector<std::pair<int, int>> sig;
      sig.reserve(g.adj[i].size());
      for (auto [v, order]: g.adj[i]) {
        sig.emplace_back(colors[v], order);
      }
      std::sort(sig.begin(), sig.end());
      keys[i] = { colors[i], std::move(sig) };
    }
    Colors next = rank_keys(keys);
    const int next_cells = count_cells(next);
    colors = std::move(next);
    if (next_cells == cells) {
      return colors;
    }
    cells = next_cells;
  }
}

using Certificate = std::vector<int>;

Certificate certificate(const Graph &g, const Colors &discrete,
                        std::vector<std::size_t> &order) {
  order.resize(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    order[discrete[i]] = i;
  }
  Certificate cert;
  cert.reserve(2 * g.n + 3 * g.n * 2);
  for (std::size_t k = 0; k < g.n; ++k) {
    cert.push_back(g.element[order[k]]);
    cert.push_back(g.charge[order[k]]);
  }
  std::vector<std::tuple<int, int, int>> edges;
  for (std::size_t i = 0; i < g.n; ++i) {
    for (auto [j, bo]: g.adj[i]) {
      const int ci = discrete[i];
      const int cj = discrete[j];
      if (ci < cj) {
        edges.emplace_back(ci, cj, bo);
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  for (auto [a, b, bo]: edges) {
    cert.push_back(a);
    cert.push_back(b);
    cert.push_back(bo);
  }
  return cert;
}

class Canonicalizer {
 public:
  explicit Canonicalizer(const Graph &g): g_(g) { }

  std::vector<std::size_t> run() {
    search(refine(g_, initial_colors(g_)));
    return best_order_;
  }

 private:
  void search(const Colors &colors) {
    const int cells = count_cells(colors);
    if (cells == static_cast<int>(g_.n)) {
      std::vector<std::size_t> order;
      Certificate cert = certificate(g_, colors, order);
      if (!best_ || cert < *best_) {
        best_ = std::move(cert);
        best_order_ = std::move(order);
      }
      return;
    }

    // Target: the lowest-colored cell with more than one atom.
    std::vector<int> size(cells, 0);
    for (int c: colors) {
      ++size[c];
    }
    int target = 0;
    while (size[target] < 2) {
      ++target;
    }
    std::vector<std::size_t> cell;
    for (std::size_t i = 0; i < g_.n; ++i) {
      if (colors[i] == target) {
        cell.push_back(i);
      }
    }

    // Atoms with identical neighborhoods are swapped by an automorphism
    // that fixes everything else, so one representative per twin class
    // yields the same set of leaves.
    std::vector<std::size_t> reps;
    for (std::size_t v: cell) {
      const bool twin = std::any_of(reps.begin(), reps.end(),
                                    [&](std::size_t r) {
                                      return g_.adj[r] == g_.adj[v];
                                    });
      if (!twin) {
        reps.push_back(v);
      }
    }

    for (std::size_t v: reps) {
      Colors split(g_.n);
      for (std::size_t i = 0; i < g_.n; ++i) {
        split[i] = 2 * colors[i] + (colors[i] == target && i != v ? 1 : 0);
      }
      search(refine(g_, rank_keys(split)));
    }
  }

  const Graph &g_;
  std::optional<Certificate> best_;
  std::vector<std::size_t> best_order_;
};

}  // namespace

std::vector<std::size_t> canonical_order(const Molecule &m) {
  const Graph g = make_graph(normalize_aromatic(m));
  if (g.n == 0) {
    return {};
  }
  return Canonicalizer(g).run();
}

CanonicalId canonical_id(const Molecule &m) {
  if (m.empty()) {
    throw MoleculeError("canonical_id of the placeholder molecule");
  }
  const Molecule norm = normalize_aromatic(m);
  const Graph g = make_graph(norm);
  const std::vector<std::size_t> order = Canonicalizer(g).run();

  std::vector<std::size_t> rank(g.n);
  for (std::size_t k = 0; k < order.size(); ++k) {
    rank[order[k]] = k;
  }

  std::string out;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Atom &a = norm.atom(order[k]);
    if (k > 0) {
      out.push_back(',');
    }
    out += a.element;
    if (a.charge > 0) {
      out += "+" + std::to_string(a.charge);
    } else if (a.charge < 0) {
      out += std::to_string(a.charge);
    }
  }
  out.push_back('|');

  std::vector<std::tuple<std::size_t, std::size_t, char>> edges;
  for (const Bond &b: norm.bonds()) {
    const std::size_t ra = std::min(rank[b.a], rank[b.b]);
    const std::size_t rb = std::max(rank[b.a], rank[b.b]);
    edges.emplace_back(ra, rb, bond_order_code(b.order));
  }
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto &[ra, rb, code] = edges[i];
    if (i > 0) {
      out.push_back(',');
    }
    out += std::to_string(ra) + "-" + std::to_string(rb) + code;
  }
  return CanonicalId { std::move(out) };
}

bool same_structure(const Molecule &a, const Molecule &b) {
  if (a.is_placeholder() || b.is_placeholder()) {
    return false;
  }
  if (a.num_atoms() != b.num_atoms() || a.num_bonds() != b.num_bonds()) {
    return false;
  }
  return canonical_id(a) == canonical_id(b);
}

}  // namespace ocsrbench::chemgraph
