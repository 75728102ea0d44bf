//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrbench/io/png.hpp"

#include <png.h>

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>

namespace ocsrbench::io {
namespace {

// libpng is C; errors leave through longjmp and are turned into exceptions
// only after control is back in a frame without pending C++ destructors.
struct ErrorSink {
  char message[256] = "unknown error";
};

void on_error(png_structp png, png_const_charp msg) {
  auto *sink = static_cast<ErrorSink *>(png_get_error_ptr(png));
  std::snprintf(sink->message, sizeof sink->message, "%s", msg);
  png_longjmp(png, 1);
}

void on_warning(png_structp, png_const_charp) { }

struct Reader {
  const std::uint8_t *data;
  std::size_t size;
  std::size_t pos;
};

void read_from_span(png_structp png, png_bytep out, png_size_t n) {
  auto *r = static_cast<Reader *>(png_get_io_ptr(png));
  if (r->size - r->pos < n) {
    png_error(png, "truncated data");
  }
  std::memcpy(out, r->data + r->pos, n);
  r->pos += n;
}

void write_to_vector(png_structp png, png_bytep data, png_size_t n) {
  auto *out = static_cast<std::vector<std::uint8_t> *>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + n);
}

void flush_noop(png_structp) { }

bool encode_rows(png_structp png, png_infop info, const RasterImage &img,
                 std::vector<std::uint8_t> *out) {
  if (setjmp(png_jmpbuf(png))) {
    return false;
  }
  png_set_write_fn(png, out, write_to_vector, flush_noop);
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.width()),
               static_cast<png_uint_32>(img.height()), 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const std::uint8_t *pixels = img.pixels().data();
  for (std::size_t y = 0; y < img.height(); ++y) {
    png_write_row(png, pixels + y * img.width());
  }
  png_write_end(png, nullptr);
  return true;
}

struct Decoded {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t channels = 0;
  std::size_t rowbytes = 0;
};

bool read_header(png_structp png, png_infop info, Reader *reader,
                 Decoded *d) {
  if (setjmp(png_jmpbuf(png))) {
    return false;
  }
  png_set_read_fn(png, reader, read_from_span);
  png_read_info(png, info);

  const int color = png_get_color_type(png, info);
  const int depth = png_get_bit_depth(png, info);
  if (color == PNG_COLOR_TYPE_PALETTE) {
    png_set_palette_to_rgb(png);
  }
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  if (png_get_valid(png, info, PNG_INFO_tRNS)) {
    png_set_tRNS_to_alpha(png);
  }
  if (depth == 16) {
    png_set_strip_16(png);
  }
  if (color == PNG_COLOR_TYPE_RGB || color == PNG_COLOR_TYPE_RGB_ALPHA
      || color == PNG_COLOR_TYPE_PALETTE) {
    png_set_rgb_to_gray_fixed(png, 1, -1, -1);
  }
  png_color_16 white {};
  white.red = white.green = white.blue = white.gray = 255;
  png_set_background(png, &white, PNG_BACKGROUND_GAMMA_SCREEN, 0, 1.0);
  png_read_update_info(png, info);

  d->width = png_get_image_width(png, info);
  d->height = png_get_image_height(png, info);
  d->channels = png_get_channels(png, info);
  d->rowbytes = png_get_rowbytes(png, info);
  return true;
}

bool read_rows(png_structp png, png_bytepp rows) {
  if (setjmp(png_jmpbuf(png))) {
    return false;
  }
  png_read_image(png, rows);
  png_read_end(png, nullptr);
  return true;
}

}  // namespace

std::vector<std::uint8_t> encode_png(const RasterImage &img) {
  if (img.width() == 0 || img.height() == 0) {
    throw std::runtime_error("png: cannot encode an empty image");
  }
  ErrorSink sink;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &sink,
                                            on_error, on_warning);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    throw std::runtime_error("png: out of memory");
  }
  std::vector<std::uint8_t> out;
  const bool ok = encode_rows(png, info, img, &out);
  png_destroy_write_struct(&png, &info);
  if (!ok) {
    throw std::runtime_error(std::string("png: ") + sink.message);
  }
  return out;
}

RasterImage decode_png(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
    throw std::runtime_error("png: not a PNG stream");
  }
  ErrorSink sink;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &sink,
                                           on_error, on_warning);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw std::runtime_error("png: out of memory");
  }
  Reader reader { bytes.data(), bytes.size(), 0 };
  Decoded d;
  bool ok = read_header(png, info, &reader, &d);
  std::vector<std::uint8_t> raw;
  if (ok) {
    raw.resize(d.rowbytes * d.height);
    std::vector<png_bytep> rows(d.height);
    for (std::size_t y = 0; y < d.height; ++y) {
      rows[y] = raw.data() + y * d.rowbytes;
    }
    ok = read_rows(png, rows.data());
  }
  png_destroy_read_struct(&png, &info, nullptr);
  if (!ok) {
    throw std::runtime_error(std::string("png: ") + sink.message);
  }

  std::vector<std::uint8_t> gray(d.width * d.height);
  for (std::size_t y = 0; y < d.height; ++y) {
    for (std::size_t x = 0; x < d.width; ++x) {
      gray[y * d.width + x] = raw[y * d.rowbytes + x * d.channels];
    }
  }
  return RasterImage(d.width, d.height, std::move(gray));
}

void write_png(const std::filesystem::path &path, const RasterImage &img) {
  const std::vector<std::uint8_t> bytes = encode_png(img);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  out.write(reinterpret_cast<const char *>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw std::runtime_error("write failed: " + path.string());
  }
}

RasterImage read_png(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  const std::vector<std::uint8_t> bytes(std::istreambuf_iterator<char>(in),
                                        {});
  return decode_png(bytes);
}

}  // namespace ocsrbench::io
