//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include <array>

#include "ocsrbench/degrade/degrade.hpp"

namespace ocsrbench::degrade {

std::optional<int> otsu_threshold(const RasterImage &img) {
  std::array<double, 256> hist {};
  for (std::uint8_t p: img.pixels()) {
    hist[p] += 1;
  }
  double total = 0;
  double total_sum = 0;
  for (int i = 0; i < 256; ++i) {
    total += hist[i];
    total_sum += i * hist[i];
  }

  std::optional<int> best;
  double best_var = 0;
  double w0 = 0;
  double sum0 = 0;
  for (int t = 0; t < 255; ++t) {
    w0 += hist[t];
    sum0 += t * hist[t];
    const double w1 = total - w0;
    if (w0 == 0 || w1 == 0) {
      continue;
    }
    const double diff = sum0 / w0 - (total_sum - sum0) / w1;
    const double between = w0 * w1 * diff * diff;
    // Strict comparison keeps the lowest threshold among equal maxima.
    if (between > best_var) {
      best_var = between;
      best = t;
    }
  }
  return best;
}

RasterImage binarize_otsu(const RasterImage &img) {
  const std::optional<int> t = otsu_threshold(img);
  RasterImage out = img;
  for (std::uint8_t &p: out.pixels()) {
    p = (t && p <= *t) ? kBlack : kWhite;
  }
  return out;
}

}  // namespace ocsrbench::degrade
