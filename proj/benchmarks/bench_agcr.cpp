#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "agcr/backend.hpp"
#include "agcr/codec.hpp"
#include "agcr/contour.hpp"
#include "agcr/decode.hpp"

using namespace agcr;

namespace {

// Dark noisy background with a few bright Gaussian blobs.
Raster sparse_image(std::uint32_t side, std::uint32_t seed) {
  std::mt19937 rng(seed);
  Raster r(side, side, 16, 0);
  std::uniform_real_distribution<double> pos(0.2 * side, 0.8 * side);
  const double cx[3] = {pos(rng), pos(rng), pos(rng)}, cy[3] = {pos(rng), pos(rng), pos(rng)};
  const double s = side / 16.0;
  for (std::uint32_t y = 0; y < side; ++y)
    for (std::uint32_t x = 0; x < side; ++x) {
      double f = 0;
      for (int b = 0; b < 3; ++b) f += std::exp(-((x - cx[b]) * (x - cx[b]) + (y - cy[b]) * (y - cy[b])) / (2 * s * s));
      r.at(x, y) = static_cast<std::uint16_t>(std::min(65535.0, 100 + (rng() % 8) + 40000 * f));
    }
  return r;
}

PixelRegion disc(int radius) {
  PixelRegion r;
  for (int y = -radius; y <= radius; ++y)
    for (int x = -radius; x <= radius; ++x)
      if (x * x + y * y <= radius * radius) {
        r.pixels.push_back({x, y});
        r.bbox.expand(Vertex{x, y});
      }
  return r;
}

void BM_EncodeAuto(benchmark::State& st) {
  const Raster r = sparse_image(static_cast<std::uint32_t>(st.range(0)), 1);
  std::size_t out = 0;
  for (auto _ : st) {
    auto res = encode(r);
    out = res.bytes.size();
    benchmark::DoNotOptimize(res.bytes.data());
  }
  st.counters["ratio"] = static_cast<double>(r.pixels.size() * 2) / static_cast<double>(out);
  st.SetBytesProcessed(static_cast<std::int64_t>(st.iterations() * r.pixels.size() * 2));
}
BENCHMARK(BM_EncodeAuto)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_EncodeStrategy(benchmark::State& st) {
  const Raster r = sparse_image(256, 2);
  EncodeConfig cfg;
  cfg.strategy = static_cast<Strategy>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(encode(r, cfg).bytes.data());
  st.SetLabel(std::string(strategy_name(cfg.strategy)));
}
BENCHMARK(BM_EncodeStrategy)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_Decode(benchmark::State& st) {
  const Raster r = sparse_image(256, 3);
  EncodeConfig cfg;
  cfg.strategy = Strategy::kBinned;
  const auto bytes = encode(r, cfg).bytes;
  const DecodeOptions opt{static_cast<unsigned>(st.range(0)), false};
  for (auto _ : st) benchmark::DoNotOptimize(decode_container(bytes, opt).pixels.data());
  st.SetBytesProcessed(static_cast<std::int64_t>(st.iterations() * r.pixels.size() * 2));
}
BENCHMARK(BM_Decode)->Arg(1)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ContourRegion(benchmark::State& st) {
  const PixelRegion r = disc(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(contour_region(r).outer.data());
  st.counters["vertices"] = static_cast<double>(contour_region(r).vertex_count());
}
BENCHMARK(BM_ContourRegion)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_FillRegion(benchmark::State& st) {
  const PixelRegion r = disc(static_cast<int>(st.range(0)));
  const GeometricContour c = contour_region(r);
  for (auto _ : st) benchmark::DoNotOptimize(fill_region(c).raw().data());
}
BENCHMARK(BM_FillRegion)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_JpegLs(benchmark::State& st) {
  const Raster r = sparse_image(256, 4);
  const ImagePlane img{r.width, r.height, r.bit_depth, r.pixels};
  for (auto _ : st) benchmark::DoNotOptimize(jpegls_encode(img).data());
  st.SetBytesProcessed(static_cast<std::int64_t>(st.iterations() * r.pixels.size() * 2));
}
BENCHMARK(BM_JpegLs)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
