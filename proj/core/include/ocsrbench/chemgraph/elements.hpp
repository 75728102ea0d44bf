//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <optional>
#include <string_view>

namespace ocsrbench::chemgraph {

/// Atomic number for a periodic-table symbol (case-sensitive, "Cl" not "CL"),
/// or nullopt for anything that is not an element.
std::optional<int> atomic_number(std::string_view symbol);

inline bool is_element(std::string_view symbol) {
  return atomic_number(symbol).has_value();
}

/// Default valence used to derive implicit hydrogen counts for depiction.
/// Returns nullopt for elements that carry no implicit hydrogens.
std::optional<int> default_valence(std::string_view symbol, int charge);

}  // namespace ocsrbench::chemgraph
