//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ocsrbench/render/raster_image.hpp"

namespace ocsrbench::degrade {

enum class DamageKind {
  kCompress,
  kBlend,
  kNoise,
  kDistort,
};

std::string_view kind_name(DamageKind kind);

/// One damage setting. `param` is the JPEG quality for kCompress, the
/// overlay percent for kBlend, the impulse density percent for kNoise and
/// the displacement scale x100 for kDistort. `seed` only affects kNoise and
/// kDistort.
struct DamageSpec {
  DamageKind kind = DamageKind::kBlend;
  int param = 0;
  std::uint64_t seed = 0;

  /// Subset label. Compression is labelled by compression percentage
  /// (100 - quality), so quality 1 is "compress_99" and quality 80 is
  /// "compress_20"; the other kinds use "<kind>_<param>".
  std::string label() const;

  bool operator==(const DamageSpec &) const = default;
};

/// Inverse of DamageSpec::label(). Throws std::invalid_argument for an
/// unknown kind or a parameter outside its kind's valid range.
DamageSpec parse_label(std::string_view label);

/// True when param is one of the standard grid values for its kind.
bool on_grid(const DamageSpec &spec);

/// Throws std::invalid_argument if the setting is off-grid (unless allowed) or
/// outside the physically valid range for its kind.
void validate(const DamageSpec &spec, bool allow_off_grid = false);

/// The 19 standard settings: compress_20..compress_99, blend_20..blend_80,
/// noise_5..noise_25 and distort_10..distort_50.
std::vector<DamageSpec> default_grid();

/// Per-image seed as a stable hash of (corpus seed, subset label, image id).
std::uint64_t derive_seed(std::uint64_t corpus_seed, std::string_view label,
                          std::string_view image_id);

inline constexpr int kDefaultShepardsPoints = 4;

/// Dispatches to the transform named by spec.kind.
RasterImage apply(const RasterImage &img, const DamageSpec &spec,
                  int shepards_points = kDefaultShepardsPoints);

/// p -> round(p * (100 - percent) / 100).
RasterImage blend_black(const RasterImage &img, int percent);

using QuantTable = std::array<std::uint16_t, 64>;

/// Standard luminance quantization table, natural (row-major) order.
const QuantTable &base_luminance_table();

/// IJG quality scaling factor in percent: 5000/q below 50, else 200 - 2q.
int ijg_scale(int quality);

/// Base table scaled for `quality`, entries clamped to [1, 255].
QuantTable quantization_table(int quality);

/// Baseline JPEG coding loss for a grayscale image: 8x8 DCT, quantization
/// with quantization_table(quality), dequantization and inverse DCT.
/// Edges are replicated to fill partial blocks. Dimensions are preserved.
RasterImage jpeg_roundtrip(const RasterImage &img, int quality);

/// Salt-and-pepper noise: each pixel, with probability density/100, becomes
/// 0 or 255 with equal odds. Draws come from std::mt19937_64(seed).
RasterImage impulse_noise(const RasterImage &img, int density_percent,
                          std::uint64_t seed);

struct Point {
  double x = 0, y = 0;

  bool operator==(const Point &) const = default;
};

struct ControlPair {
  Point source;
  Point destination;
};

/// `n_points` random pairs plus the four corner anchors (zero
/// displacement). Sources are uniform in [0.3, 0.7] of each dimension;
/// displacements have length scale * min(W, H) * U[0.5, 1] at a uniform
/// angle. Coordinates are pixel indices.
std::vector<ControlPair> shepards_control_pairs(std::size_t width,
                                                std::size_t height,
                                                double scale,
                                                std::uint64_t seed,
                                                int n_points);

/// Source position sampled for output pixel `at`: the inverse-distance
/// weighted (w = 1 / (d^2 + 1e-6)) average displacement subtracted from
/// `at`. At a destination point itself that point's displacement is used
/// exactly.
Point shepards_source(Point at, std::span<const ControlPair> pairs);

/// Backward-mapped warp with bilinear sampling; samples outside the image
/// are white.
RasterImage shepards_warp(const RasterImage &img,
                          std::span<const ControlPair> pairs);

/// Shepard's distortion with random control points. Expects the image to
/// carry a white margin (the corpus builder guarantees 30 px).
RasterImage shepards_distort(const RasterImage &img, double scale,
                             std::uint64_t seed,
                             int n_points = kDefaultShepardsPoints);

/// Global Otsu threshold, or nullopt when the histogram has a single level
/// (zero between-class variance for every split).
std::optional<int> otsu_threshold(const RasterImage &img);

/// Pixels <= threshold become 0, the rest 255. A single-level image maps
/// to all white.
RasterImage binarize_otsu(const RasterImage &img);

/// Peak signal-to-noise ratio in dB; +inf for identical images.
double psnr(const RasterImage &a, const RasterImage &b);

}  // namespace ocsrbench::degrade
