//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include <benchmark/benchmark.h>

#include "corpus.hpp"
#include "ocsrbench/degrade/degrade.hpp"
#include "ocsrbench/io/png.hpp"
#include "ocsrbench/render/render.hpp"

namespace ocsrbench::bench {
namespace {

// A mid-sized corpus depiction shared by the transform benchmarks.
const RasterImage &sample() {
  static const RasterImage img = [] {
    const auto mols = load_corpus();
    return render::render(mols[mols.size() / 2]);
  }();
  return img;
}

void BM_RenderCorpus(benchmark::State &state) {
  const auto mols = load_corpus();
  for (auto _: state) {
    for (const auto &m: mols) {
      benchmark::DoNotOptimize(render::render(m));
    }
  }
  state.SetItemsProcessed(state.iterations() * mols.size());
}
BENCHMARK(BM_RenderCorpus)->Unit(benchmark::kMillisecond);

void BM_JpegRoundtrip(benchmark::State &state) {
  const int quality = static_cast<int>(state.range(0));
  for (auto _: state) {
    benchmark::DoNotOptimize(degrade::jpeg_roundtrip(sample(), quality));
  }
}
BENCHMARK(BM_JpegRoundtrip)->Arg(1)->Arg(50)->Arg(80);

void BM_ImpulseNoise(benchmark::State &state) {
  for (auto _: state) {
    benchmark::DoNotOptimize(degrade::impulse_noise(sample(), 25, 7));
  }
}
BENCHMARK(BM_ImpulseNoise);

void BM_ShepardsDistort(benchmark::State &state) {
  for (auto _: state) {
    benchmark::DoNotOptimize(degrade::shepards_distort(sample(), 0.5, 7));
  }
}
BENCHMARK(BM_ShepardsDistort);

void BM_BinarizeOtsu(benchmark::State &state) {
  const RasterImage blurred = degrade::jpeg_roundtrip(sample(), 20);
  for (auto _: state) {
    benchmark::DoNotOptimize(degrade::binarize_otsu(blurred));
  }
}
BENCHMARK(BM_BinarizeOtsu);

void BM_PngEncode(benchmark::State &state) {
  for (auto _: state) {
    benchmark::DoNotOptimize(io::encode_png(sample()));
  }
}
BENCHMARK(BM_PngEncode);

}  // namespace
}  // namespace ocsrbench::bench
