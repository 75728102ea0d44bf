//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include <stdexcept>

#include "ocsrbench/degrade/degrade.hpp"

namespace ocsrbench::degrade {

RasterImage blend_black(const RasterImage &img, int percent) {
  if (percent < 0 || percent > 100) {
    throw std::invalid_argument("blend percent must be in [0, 100]");
  }
  RasterImage out = img;
  const int keep = 100 - percent;
  for (std::uint8_t &p: out.pixels()) {
    // round-half-up of p * keep / 100 in integers
    p = static_cast<std::uint8_t>((p * keep * 2 + 100) / 200);
  }
  return out;
}

}  // namespace ocsrbench::degrade
