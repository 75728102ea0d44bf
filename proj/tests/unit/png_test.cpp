//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrbench/io/png.hpp"

#include <png.h>

#include <stdexcept>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace ocsrbench::io {
namespace {

// Encodes interleaved 8-bit samples with libpng's simplified API.
std::vector<std::uint8_t> encode_with(std::uint32_t format, std::uint32_t w,
                                      std::uint32_t h,
                                      const std::vector<std::uint8_t> &data) {
  png_image image {};
  image.version = PNG_IMAGE_VERSION;
  image.width = w;
  image.height = h;
  image.format = format;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, data.data(), 0,
                                 nullptr)) {
    throw std::runtime_error(image.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, data.data(), 0,
                                 nullptr)) {
    throw std::runtime_error(image.message);
  }
  out.resize(size);
  return out;
}

TEST(PngTest, RoundTrip) {
  RasterImage img(13, 7);
  for (std::size_t i = 0; i < img.pixels().size(); ++i) {
    img.pixels()[i] = static_cast<std::uint8_t>(i * 37);
  }
  EXPECT_EQ(decode_png(encode_png(img)), img);
}

TEST(PngTest, CorpusRoundTrip) {
  const auto &imgs = test::corpus_renderings();
  for (std::size_t i = 0; i < imgs.size(); i += 11) {
    EXPECT_EQ(decode_png(encode_png(imgs[i])), imgs[i]);
  }
}

TEST(PngTest, EncodingIsDeterministic) {
  const RasterImage &img = test::corpus_renderings()[5];
  EXPECT_EQ(encode_png(img), encode_png(img));
}

TEST(PngTest, FileRoundTrip) {
  test::TempDir dir;
  const RasterImage img(3, 4, 17);
  write_png(dir / "x.png", img);
  EXPECT_EQ(read_png(dir / "x.png"), img);
  EXPECT_THROW(read_png(dir / "missing.png"), std::runtime_error);
  EXPECT_THROW(write_png(dir / "no" / "such" / "x.png", img),
               std::runtime_error);
}

TEST(PngTest, RejectsGarbage) {
  const std::vector<std::uint8_t> junk = { 1, 2, 3, 4, 5, 6, 7, 8, 9 };
  EXPECT_THROW(decode_png(junk), std::runtime_error);
  EXPECT_THROW(decode_png({}), std::runtime_error);
}

TEST(PngTest, RejectsTruncated) {
  std::vector<std::uint8_t> bytes = encode_png(test::corpus_renderings()[0]);
  bytes.resize(bytes.size() / 2);
  EXPECT_THROW(decode_png(bytes), std::runtime_error);
}

TEST(PngTest, ConvertsRgbToGray) {
  const std::vector<std::uint8_t> rgb = {
    255, 255, 255, 0, 0, 0, 100, 100, 100,
  };
  const RasterImage img = decode_png(encode_with(PNG_FORMAT_RGB, 3, 1, rgb));
  ASSERT_EQ(img.width(), 3u);
  EXPECT_EQ(img.at(0, 0), 255);
  EXPECT_EQ(img.at(1, 0), 0);
  EXPECT_EQ(img.at(2, 0), 100);
}

TEST(PngTest, CompositesAlphaOnWhite) {
  const std::vector<std::uint8_t> ga = { 0, 0, 0, 255, 80, 255 };
  const RasterImage img = decode_png(encode_with(PNG_FORMAT_GA, 3, 1, ga));
  EXPECT_EQ(img.at(0, 0), 255);
  EXPECT_EQ(img.at(1, 0), 0);
  EXPECT_EQ(img.at(2, 0), 80);
}

TEST(RasterImageTest, Invariants) {
  EXPECT_THROW(RasterImage(0, 3), std::invalid_argument);
  EXPECT_THROW(RasterImage(2, 2, std::vector<std::uint8_t>(3)),
               std::invalid_argument);
  const RasterImage padded = pad_white(RasterImage(2, 1, kBlack), 3);
  EXPECT_EQ(padded.width(), 8u);
  EXPECT_EQ(padded.height(), 7u);
  InkBox box {};
  ASSERT_TRUE(ink_box(padded, box));
  EXPECT_EQ(box.x0, 3u);
  EXPECT_EQ(box.y1, 3u);
  EXPECT_FALSE(ink_box(RasterImage(4, 4), box));
}

}  // namespace
}  // namespace ocsrbench::io
