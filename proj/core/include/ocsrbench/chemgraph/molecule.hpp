//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ocsrbench::chemgraph {

enum class BondOrder : std::uint8_t {
  kSingle = 1,
  kDouble = 2,
  kTriple = 3,
  kAromatic = 4,
};

struct Atom {
  std::string element;
  int charge = 0;
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Atom &) const = default;
};

struct Bond {
  std::size_t a = 0;
  std::size_t b = 0;
  BondOrder order = BondOrder::kSingle;

  bool operator==(const Bond &) const = default;
};

inline constexpr int kMinCharge = -4;
inline constexpr int kMaxCharge = 4;

/// A constitutional molecular graph with optional 2D depiction coordinates.
///
/// Every mutation validates the graph invariants (known element symbols,
/// charges in [-4, +4], bond endpoints in range, no self bonds, no repeated
/// atom pair) and throws MoleculeError on violation, so a Molecule that
/// exists is always well formed. The default-constructed, atom-free value is
/// the placeholder recorded for failed recognitions.
class Molecule {
 public:
  Molecule() = default;
  Molecule(std::vector<Atom> atoms, std::vector<Bond> bonds);

  std::size_t add_atom(Atom atom);
  std::size_t add_bond(std::size_t a, std::size_t b, BondOrder order);

  std::span<const Atom> atoms() const { return atoms_; }
  std::span<const Bond> bonds() const { return bonds_; }
  const Atom &atom(std::size_t i) const { return atoms_.at(i); }
  std::size_t num_atoms() const { return atoms_.size(); }
  std::size_t num_bonds() const { return bonds_.size(); }
  bool empty() const { return atoms_.empty(); }

  /// Index of the bond joining a and b, or num_bonds() if none.
  std::size_t find_bond(std::size_t a, std::size_t b) const;

  void set_coordinates(std::size_t i, double x, double y);

  /// Per-atom list of (neighbor, bond index).
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>>
  adjacency() const;

  /// Connected-component id per atom; ids are numbered in order of each
  /// component's lowest atom index.
  std::vector<std::size_t> components() const;

  static Molecule placeholder() { return Molecule(); }
  bool is_placeholder() const { return atoms_.empty(); }

  bool operator==(const Molecule &) const = default;

 private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
};

/// Sum of bond orders at an atom, counting aromatic bonds as 1.5.
double bond_order_sum(const Molecule &m, std::size_t atom);

char bond_order_code(BondOrder order);

}  // namespace ocsrbench::chemgraph
