//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "ocsrbench/render/raster_image.hpp"

namespace ocsrbench::io {

/// 8-bit grayscale PNG bytes. Output carries no timestamp or text chunks,
/// so equal images give equal bytes.
std::vector<std::uint8_t> encode_png(const RasterImage &img);

/// Decodes any PNG; color is reduced to luma, alpha is composited on white
/// and 16-bit samples are truncated to 8 bits. Throws std::runtime_error.
RasterImage decode_png(std::span<const std::uint8_t> bytes);

void write_png(const std::filesystem::path &path, const RasterImage &img);
RasterImage read_png(const std::filesystem::path &path);

}  // namespace ocsrbench::io
