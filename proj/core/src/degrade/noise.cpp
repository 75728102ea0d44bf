//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include <random>
#include <stdexcept>

#include "ocsrbench/degrade/degrade.hpp"

namespace ocsrbench::degrade {

RasterImage impulse_noise(const RasterImage &img, int density_percent,
                          std::uint64_t seed) {
  if (density_percent < 0 || density_percent > 100) {
    throw std::invalid_argument("noise density must be in [0, 100]");
  }
  RasterImage out = img;
  if (density_percent == 0) {
    return out;
  }
  // One 64-bit draw per pixel: the high 32 bits decide the flip, bit 0 the
  // color. Only raw engine output is used so the stream is identical on
  // every standard library.
  const std::uint64_t threshold =
      (static_cast<std::uint64_t>(density_percent) << 32) / 100;
  std::mt19937_64 rng(seed);
  for (std::uint8_t &p: out.pixels()) {
    const std::uint64_t r = rng();
    if ((r >> 32) < threshold) {
      p = (r & 1) ? kWhite : kBlack;
    }
  }
  return out;
}

}  // namespace ocsrbench::degrade
