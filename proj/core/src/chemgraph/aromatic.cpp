//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <array>
#include <set>
#include <vector>

#include "ocsrbench/chemgraph/canonical.hpp"

namespace ocsrbench::chemgraph {
namespace {

using Ring = std::array<std::size_t, 6>;  // bond indices, sorted

bool ring_capable(const Atom &a) {
  return a.element == "C" || a.element == "N";
}

bool ring_capable(const Bond &b) {
  return b.order != BondOrder::kTriple;
}

// All simple 6-cycles through C/N atoms joined by non-triple bonds.
std::vector<Ring> six_rings(const Molecule &m) {
  const auto adj = m.adjacency();
  std::set<Ring> found;
  std::vector<std::size_t> path_atoms;
  std::vector<std::size_t> path_bonds;

  auto dfs = [&](auto &&self, std::size_t start, std::size_t u) -> void {
    for (auto [v, bond]: adj[u]) {
      if (!ring_capable(m.atom(v)) || !ring_capable(m.bonds()[bond])) {
        continue;
      }
      if (v == start && path_bonds.size() == 5) {
        Ring ring;
        std::copy(path_bonds.begin(), path_bonds.end(), ring.begin());
        ring[5] = bond;
        std::sort(ring.begin(), ring.end());
        found.insert(ring);
        continue;
      }
      // Only extend through atoms above the start so each cycle is rooted
      // at its smallest atom.
      if (v <= start || path_bonds.size() >= 5
          || std::find(path_atoms.begin(), path_atoms.end(), v)
                 != path_atoms.end()) {
        continue;
      }
      path_atoms.push_back(v);
      path_bonds.push_back(bond);
      self(self, start, v);
      path_atoms.pop_back();
      path_bonds.pop_back();
    }
  };

  for (std::size_t s = 0; s < m.num_atoms(); ++s) {
    if (!ring_capable(m.atom(s))) {
      continue;
    }
    path_atoms.assign(1, s);
    path_bonds.clear();
    dfs(dfs, s, s);
  }
  return { found.begin(), found.end() };
}

}  // namespace

Molecule normalize_aromatic(const Molecule &m) {
  const std::vector<Ring> rings = six_rings(m);
  if (rings.empty()) {
    return m;
  }

  std::vector<bool> ring_bond(m.num_bonds(), false);
  for (const Ring &r: rings) {
    for (std::size_t b: r) {
      ring_bond[b] = true;
    }
  }

  // An atom can sit in an aromatic sextet when it has exactly one double
  // bond and that bond lies in a candidate ring, or when it already has
  // aromatic bonds and no double bond.
  std::vector<int> doubles(m.num_atoms(), 0);
  std::vector<int> ring_doubles(m.num_atoms(), 0);
  std::vector<int> aromatic(m.num_atoms(), 0);
  for (std::size_t i = 0; i < m.num_bonds(); ++i) {
    const Bond &b = m.bonds()[i];
    for (std::size_t a: { b.a, b.b }) {
      if (b.order == BondOrder::kDouble) {
        ++doubles[a];
        if (ring_bond[i]) {
          ++ring_doubles[a];
        }
      } else if (b.order == BondOrder::kAromatic) {
        ++aromatic[a];
      }
    }
  }
  auto pi_ok = [&](std::size_t a) {
    return (doubles[a] == 1 && ring_doubles[a] == 1)
           || (doubles[a] == 0 && aromatic[a] >= 2);
  };

  std::vector<bool> make_aromatic(m.num_bonds(), false);
  for (const Ring &r: rings) {
    bool ok = true;
    for (std::size_t bi: r) {
      const Bond &b = m.bonds()[bi];
      if (!pi_ok(b.a) || !pi_ok(b.b)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      for (std::size_t bi: r) {
        make_aromatic[bi] = true;
      }
    }
  }

  std::vector<Bond> bonds(m.bonds().begin(), m.bonds().end());
  for (std::size_t i = 0; i < bonds.size(); ++i) {
    if (make_aromatic[i]) {
      bonds[i].order = BondOrder::kAromatic;
    }
  }
  return Molecule(std::vector<Atom>(m.atoms().begin(), m.atoms().end()),
                  std::move(bonds));
}

}  // namespace ocsrbench::chemgraph
