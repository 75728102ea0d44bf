//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrbench/render/raster_image.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ocsrbench {

RasterImage::RasterImage(std::size_t width, std::size_t height,
                         std::uint8_t fill)
    : width_(width), height_(height), pixels_(width * height, fill) {
  if (width == 0 || height == 0) {
    throw std::invalid_argument("image dimensions must be at least 1x1");
  }
}

RasterImage::RasterImage(std::size_t width, std::size_t height,
                         std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width == 0 || height == 0) {
    throw std::invalid_argument("image dimensions must be at least 1x1");
  }
  if (pixels_.size() != width * height) {
    throw std::invalid_argument(
        "pixel buffer holds " + std::to_string(pixels_.size())
        + " samples, expected " + std::to_string(width * height));
  }
}

bool ink_box(const RasterImage &img, InkBox &box, std::uint8_t threshold) {
  bool found = false;
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      if (img.at(x, y) >= threshold) {
        continue;
      }
      if (!found) {
        box = { x, y, x, y };
        found = true;
      } else {
        box.x0 = std::min(box.x0, x);
        box.x1 = std::max(box.x1, x);
        box.y0 = std::min(box.y0, y);
        box.y1 = std::max(box.y1, y);
      }
    }
  }
  return found;
}

RasterImage pad_white(const RasterImage &img, std::size_t margin) {
  RasterImage out(img.width() + 2 * margin, img.height() + 2 * margin);
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      out.at(x + margin, y + margin) = img.at(x, y);
    }
  }
  return out;
}

}  // namespace ocsrbench
