//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ocsrbench/degrade/degrade.hpp"

namespace ocsrbench::degrade {

double psnr(const RasterImage &a, const RasterImage &b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw std::invalid_argument("psnr of images with different dimensions");
  }
  double sq = 0;
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const double d = static_cast<double>(pa[i]) - pb[i];
    sq += d * d;
  }
  if (sq == 0) {
    return std::numeric_limits<double>::infinity();
  }
  const double mse = sq / static_cast<double>(pa.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

}  // namespace ocsrbench::degrade
