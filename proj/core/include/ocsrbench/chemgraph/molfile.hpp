//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <string>
#include <string_view>

#include "ocsrbench/chemgraph/molecule.hpp"

namespace ocsrbench::chemgraph {

/// Reads one MDL V2000 connection table.
///
/// Atom symbols come from columns 32-34, coordinates from the three 10.4
/// fields, bond orders 1-4 from the bond block (stereo flags are ignored,
/// wedges read as single). Any "M  CHG" line resets the legacy charge
/// column for the whole molecule, as in the MDL format. Query bond types,
/// V3000 blocks and a missing "M  END" raise ParseError with the 1-based
/// line number. Text before the header (e.g. blank lines from a tool's
/// stdout) is not skipped; callers pass the block itself.
Molecule parse_molfile(std::string_view text);

/// Writes a V2000 block that parse_molfile reads back field for field
/// (coordinates rounded to 4 decimal places). `name` goes on header line 1.
std::string write_molfile(const Molecule &m, std::string_view name = {});

}  // namespace ocsrbench::chemgraph
