//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <array>
#include <cstdint>

namespace ocsrbench::render {

inline constexpr int kGlyphWidth = 5;
inline constexpr int kGlyphHeight = 7;

using Glyph = std::array<std::uint8_t, kGlyphHeight>;

// Covers A-Z, a-z, 0-9, '+' and '-'; anything else maps to a hollow box.
const Glyph &glyph(char c);
bool has_glyph(char c);

}  // namespace ocsrbench::render
