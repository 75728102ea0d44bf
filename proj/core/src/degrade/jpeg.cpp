//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ocsrbench/degrade/degrade.hpp"

namespace ocsrbench::degrade {
namespace {

constexpr QuantTable kLuminance = {
  16, 11, 10, 16, 24,  40,  51,  61,   //
  12, 12, 14, 19, 26,  58,  60,  55,   //
  14, 13, 16, 24, 40,  57,  69,  56,   //
  14, 17, 22, 29, 51,  87,  80,  62,   //
  18, 22, 37, 56, 68,  109, 103, 77,   //
  24, 35, 55, 64, 81,  104, 113, 92,   //
  49, 64, 78, 87, 103, 121, 120, 101,  //
  72, 92, 95, 98, 112, 100, 103, 99,   //
};

// basis[u][x] = C(u)/2 * cos((2x + 1) u pi / 16)
struct DctBasis {
  double m[8][8];

  DctBasis() {
    for (int u = 0; u < 8; ++u) {
      const double c = u == 0 ? 1.0 / std::numbers::sqrt2 : 1.0;
      for (int x = 0; x < 8; ++x) {
        m[u][x] = 0.5 * c * std::cos((2 * x + 1) * u * std::numbers::pi / 16);
      }
    }
  }
};

const DctBasis &basis() {
  static const DctBasis b;
  return b;
}

void forward_dct(const double in[8][8], double out[8][8]) {
  const auto &b = basis().m;
  double tmp[8][8];
  for (int y = 0; y < 8; ++y) {
    for (int u = 0; u < 8; ++u) {
      double s = 0;
      for (int x = 0; x < 8; ++x) {
        s += b[u][x] * in[y][x];
      }
      tmp[y][u] = s;
    }
  }
  for (int v = 0; v < 8; ++v) {
    for (int u = 0; u < 8; ++u) {
      double s = 0;
      for (int y = 0; y < 8; ++y) {
        s += b[v][y] * tmp[y][u];
      }
      out[v][u] = s;
    }
  }
}

void inverse_dct(const double in[8][8], double out[8][8]) {
  const auto &b = basis().m;
  double tmp[8][8];
  for (int v = 0; v < 8; ++v) {
    for (int x = 0; x < 8; ++x) {
      double s = 0;
      for (int u = 0; u < 8; ++u) {
        s += b[u][x] * in[v][u];
      }
      tmp[v][x] = s;
    }
  }
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      double s = 0;
      for (int v = 0; v < 8; ++v) {
        s += b[v][y] * tmp[v][x];
      }
      out[y][x] = s;
    }
  }
}

}  // namespace

const QuantTable &base_luminance_table() {
  return kLuminance;
}

int ijg_scale(int quality) {
  quality = std::clamp(quality, 1, 100);
  return quality < 50 ? 5000 / quality : 200 - 2 * quality;
}

QuantTable quantization_table(int quality) {
  const long scale = ijg_scale(quality);
  QuantTable out;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const long v = (kLuminance[i] * scale + 50) / 100;
    out[i] = static_cast<std::uint16_t>(std::clamp(v, 1L, 255L));
  }
  return out;
}

RasterImage jpeg_roundtrip(const RasterImage &img, int quality) {
  if (quality < 1 || quality > 100) {
    throw std::invalid_argument("JPEG quality must be in [1, 100]");
  }
  const QuantTable q = quantization_table(quality);
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  RasterImage out(w, h);

  double block[8][8];
  double coef[8][8];
  for (std::size_t by = 0; by < h; by += 8) {
    for (std::size_t bx = 0; bx < w; bx += 8) {
      for (int y = 0; y < 8; ++y) {
        const std::size_t sy = std::min(by + y, h - 1);
        for (int x = 0; x < 8; ++x) {
          const std::size_t sx = std::min(bx + x, w - 1);
          block[y][x] = static_cast<double>(img.at(sx, sy)) - 128.0;
        }
      }
      forward_dct(block, coef);
      for (int v = 0; v < 8; ++v) {
        for (int u = 0; u < 8; ++u) {
          const double step = q[v * 8 + u];
          coef[v][u] = std::round(coef[v][u] / step) * step;
        }
      }
      inverse_dct(coef, block);
      for (int y = 0; y < 8 && by + y < h; ++y) {
        for (int x = 0; x < 8 && bx + x < w; ++x) {
          const double p = std::round(block[y][x] + 128.0);
          out.at(bx + x, by + y) =
              static_cast<std::uint8_t>(std::clamp(p, 0.0, 255.0));
        }
      }
    }
  }
  return out;
}

}  // namespace ocsrbench::degrade
