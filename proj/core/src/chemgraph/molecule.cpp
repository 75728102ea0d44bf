//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrbench/chemgraph/molecule.hpp"

#include <string>

#include "ocsrbench/chemgraph/elements.hpp"
#include "ocsrbench/error.hpp"

namespace ocsrbench::chemgraph {

Molecule::Molecule(std::vector<Atom> atoms, std::vector<Bond> bonds) {
  atoms_.reserve(atoms.size());
  for (Atom &a: atoms) {
    add_atom(std::move(a));
  }
  bonds_.reserve(bonds.size());
  for (const Bond &b: bonds) {
    add_bond(b.a, b.b, b.order);
  }
}

std::size_t Molecule::add_atom(Atom atom) {
  if (!is_element(atom.element)) {
    throw MoleculeError("unknown element symbol '" + atom.element + "'");
  }
  if (atom.charge < kMinCharge || atom.charge > kMaxCharge) {
    throw MoleculeError("formal charge " + std::to_string(atom.charge)
                        + " outside [-4, 4]");
  }
  atoms_.push_back(std::move(atom));
  return atoms_.size() - 1;
}

std::size_t Molecule::add_bond(std::size_t a, std::size_t b,
                               BondOrder order) {
  if (a >= atoms_.size() || b >= atoms_.size()) {
    throw MoleculeError("bond references atom outside [1, "
                        + std::to_string(atoms_.size()) + "]");
  }
  if (a == b) {
    throw MoleculeError("bond from atom " + std::to_string(a + 1)
                        + " to itself");
  }
  switch (order) {
  case BondOrder::kSingle:
  case BondOrder::kDouble:
  case BondOrder::kTriple:
  case BondOrder::kAromatic:
    break;
  default:
    throw MoleculeError("invalid bond order");
  }
  if (find_bond(a, b) != bonds_.size()) {
    throw MoleculeError("duplicate bond between atoms " + std::to_string(a + 1)
                        + " and " + std::to_string(b + 1));
  }
  bonds_.push_back({ a, b, order });
  return bonds_.size() - 1;
}

std::size_t Molecule::find_bond(std::size_t a, std::size_t b) const {
  for (std::size_t i = 0; i < bonds_.size(); ++i) {
    const Bond &bd = bonds_[i];
    if ((bd.a == a && bd.b == b) || (bd.a == b && bd.b == a)) {
      return i;
    }
  }
  return bonds_.size();
}

void Molecule::set_coordinates(std::size_t i, double x, double y) {
  Atom &a = atoms_.at(i);
  a.x = x;
  a.y = y;
}

std::vector<std::vector<std::pair<std::size_t, std::size_t>>>
Molecule::adjacency() const {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(
      atoms_.size());
  for (std::size_t i = 0; i < bonds_.size(); ++i) {
    adj[bonds_[i].a].emplace_back(bonds_[i].b, i);
    adj[bonds_[i].b].emplace_back(bonds_[i].a, i);
  }
  return adj;
}

std::vector<std::size_t> Molecule::components() const {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> comp(atoms_.size(), kUnset);
  const auto adj = adjacency();
  std::size_t next = 0;
  std::vector<std::size_t> stack;
  for (std::size_t root = 0; root < atoms_.size(); ++root) {
    if (comp[root] != kUnset) {
      continue;
    }
    comp[root] = next;
    stack.push_back(root);
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (auto [v, _]: adj[u]) {
        if (comp[v] == kUnset) {
          comp[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return comp;
}

double bond_order_sum(const Molecule &m, std::size_t atom) {
  double sum = 0;
  for (const Bond &b: m.bonds()) {
    if (b.a != atom && b.b != atom) {
      continue;
    }
    sum += b.order == BondOrder::kAromatic ? 1.5
                                           : static_cast<double>(b.order);
  }
  return sum;
}

char bond_order_code(BondOrder order) {
  switch (order) {
  case BondOrder::kSingle:
    return 's';
  case BondOrder::kDouble:
    return 'd';
  case BondOrder::kTriple:
    return 't';
  case BondOrder::kAromatic:
    return 'a';
  }
  return '?';
}

}  // namespace ocsrbench::chemgraph
