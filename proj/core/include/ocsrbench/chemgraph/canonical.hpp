//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "ocsrbench/chemgraph/molecule.hpp"

namespace ocsrbench::chemgraph {

struct CanonicalId {
  std::string value;

  auto operator<=>(const CanonicalId &) const = default;
};

/// Rewrites every 6-membered ring of C/N atoms whose atoms each carry
/// exactly one ring double bond (or are already aromatic) to aromatic bond
/// order. Fused benzenoid systems are handled in any Kekule form.
/// Coordinates are kept; atom and bond order is unchanged.
Molecule normalize_aromatic(const Molecule &m);

/// Canonical atom order of the aromatic-normalized graph: result[k] is the
/// input index of the atom placed at canonical position k.
std::vector<std::size_t> canonical_order(const Molecule &m);

/// Order-invariant identity string. Equal exactly when the normalized
/// graphs are isomorphic with matching elements, charges and bond orders;
/// coordinates do not participate. Throws MoleculeError on the placeholder.
CanonicalId canonical_id(const Molecule &m);

/// False whenever either side is the placeholder.
bool same_structure(const Molecule &a, const Molecule &b);

}  // namespace ocsrbench::chemgraph
