//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ocsrbench {

inline constexpr std::uint8_t kBlack = 0;
inline constexpr std::uint8_t kWhite = 255;

/// 8-bit grayscale image, row-major, 0 = black and 255 = white.
class RasterImage {
 public:
  RasterImage(std::size_t width, std::size_t height,
              std::uint8_t fill = kWhite);
  RasterImage(std::size_t width, std::size_t height,
              std::vector<std::uint8_t> pixels);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }

  std::uint8_t at(std::size_t x, std::size_t y) const {
    return pixels_[y * width_ + x];
  }
  std::uint8_t &at(std::size_t x, std::size_t y) {
    return pixels_[y * width_ + x];
  }

  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::span<std::uint8_t> pixels() { return pixels_; }

  bool operator==(const RasterImage &) const = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> pixels_;
};

struct InkBox {
  std::size_t x0, y0, x1, y1;  // inclusive bounds of non-white pixels

  std::size_t width() const { return x1 - x0 + 1; }
  std::size_t height() const { return y1 - y0 + 1; }
};

/// Bounding box of pixels darker than `threshold`; false if none.
bool ink_box(const RasterImage &img, InkBox &box,
             std::uint8_t threshold = kWhite);

/// Adds `margin` white pixels on every side.
RasterImage pad_white(const RasterImage &img, std::size_t margin);

}  // namespace ocsrbench
