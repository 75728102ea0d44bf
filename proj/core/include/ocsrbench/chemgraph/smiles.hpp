//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <string>
#include <string_view>

#include "ocsrbench/chemgraph/molecule.hpp"

namespace ocsrbench::chemgraph {

/// Parses the SMILES subset documented in docs/smiles.md. Hydrogen counts
/// and isotopes inside brackets are accepted and dropped; stereo marks
/// ('@', '/', '\') are rejected. All coordinates are zero.
Molecule parse_smiles(std::string_view text);

/// Emits a SMILES string whose re-parse has the same canonical id as m.
/// Disconnected components are joined with '.'.
std::string write_smiles(const Molecule &m);

}  // namespace ocsrbench::chemgraph
