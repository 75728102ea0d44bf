//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ocsrbench/degrade/degrade.hpp"

namespace ocsrbench::degrade {
namespace {

constexpr double kEpsilon = 1e-6;

double unit(std::mt19937_64 &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint8_t bilinear(const RasterImage &img, Point p) {
  const double max_x = static_cast<double>(img.width() - 1);
  const double max_y = static_cast<double>(img.height() - 1);
  if (!(p.x >= 0.0 && p.x <= max_x && p.y >= 0.0 && p.y <= max_y)) {
    return kWhite;
  }
  const auto x0 = static_cast<std::size_t>(std::floor(p.x));
  const auto y0 = static_cast<std::size_t>(std::floor(p.y));
  const std::size_t x1 = std::min(x0 + 1, img.width() - 1);
  const std::size_t y1 = std::min(y0 + 1, img.height() - 1);
  const double fx = p.x - static_cast<double>(x0);
  const double fy = p.y - static_cast<double>(y0);
  const double top = img.at(x0, y0) * (1 - fx) + img.at(x1, y0) * fx;
  const double bottom = img.at(x0, y1) * (1 - fx) + img.at(x1, y1) * fx;
  const double v = top * (1 - fy) + bottom * fy;
  return static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
}

}  // namespace

std::vector<ControlPair> shepards_control_pairs(std::size_t width,
                                                std::size_t height,
                                                double scale,
                                                std::uint64_t seed,
                                                int n_points) {
  if (n_points < 0) {
    throw std::invalid_argument("n_points must be non-negative");
  }
  const double w = static_cast<double>(width);
  const double h = static_cast<double>(height);
  const double reach = scale * std::min(w, h);

  std::mt19937_64 rng(seed);
  std::vector<ControlPair> pairs;
  pairs.reserve(n_points + 4);
  for (int i = 0; i < n_points; ++i) {
    const Point src { w * (0.3 + 0.4 * unit(rng)), h * (0.3 + 0.4 * unit(rng)) };
    const double len = reach * (0.5 + 0.5 * unit(rng));
    const double angle = 2 * std::numbers::pi * unit(rng);
    pairs.push_back({ src, { src.x + len * std::cos(angle),
                             src.y + len * std::sin(angle) } });
  }
  for (Point corner: { Point { 0, 0 }, Point { w - 1, 0 }, Point { 0, h - 1 },
                       Point { w - 1, h - 1 } }) {
    pairs.push_back({ corner, corner });
  }
  return pairs;
}

Point shepards_source(Point at, std::span<const ControlPair> pairs) {
  double sum_w = 0;
  double sum_x = 0;
  double sum_y = 0;
  for (const ControlPair &c: pairs) {
    const double dx = at.x - c.destination.x;
    const double dy = at.y - c.destination.y;
    const double shift_x = c.destination.x - c.source.x;
    const double shift_y = c.destination.y - c.source.y;
    const double d2 = dx * dx + dy * dy;
    if (d2 == 0.0) {
      return { at.x - shift_x, at.y - shift_y };
    }
    const double w = 1.0 / (d2 + kEpsilon);
    sum_w += w;
    sum_x += w * shift_x;
    sum_y += w * shift_y;
  }
  if (sum_w == 0.0) {
    return at;
  }
  return { at.x - sum_x / sum_w, at.y - sum_y / sum_w };
}

RasterImage shepards_warp(const RasterImage &img,
                          std::span<const ControlPair> pairs) {
  RasterImage out(img.width(), img.height());
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      const Point src = shepards_source(
          { static_cast<double>(x), static_cast<double>(y) }, pairs);
      out.at(x, y) = bilinear(img, src);
    }
  }
  return out;
}

RasterImage shepards_distort(const RasterImage &img, double scale,
                             std::uint64_t seed, int n_points) {
  const auto pairs =
      shepards_control_pairs(img.width(), img.height(), scale, seed, n_points);
  return shepards_warp(img, pairs);
}

}  // namespace ocsrbench::degrade
