#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include <unistd.h>

#include "agcr/error.hpp"
#include "agcr/raster.hpp"
#include "fixtures.hpp"

using namespace agcr;
namespace fs = std::filesystem;

namespace {

const fs::path kData = AGCR_TEST_DATA_DIR;

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("agcr_io_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

// Sum over all pixel pairs.
double gini_by_pairs(const std::vector<std::uint16_t>& v) {
  long double diff = 0, sum = 0;
  for (auto a : v) {
    sum += a;
    for (auto b : v) diff += std::abs(static_cast<long double>(a) - b);
  }
  if (sum == 0) return 0.0;
  const long double n = static_cast<long double>(v.size());
  return static_cast<double>(diff / (2 * n * n * (sum / n)));
}

}  // namespace

TEST_CASE("golden checkerboard TIFF") {
  const Raster r = load_raster(kData / "checker_8x8.tif");
  CHECK(r.width == 8);
  CHECK(r.height == 8);
  CHECK(r.bit_depth == 16);
  for (std::uint32_t row = 0; row < 8; ++row)
    for (std::uint32_t col = 0; col < 8; ++col)
      CHECK(r.pixels[row * 8 + col] == ((row + col) % 2 ? 4096 : 0));
}

TEST_CASE("8-bit label masks load verbatim") {
  const Raster m = load_raster(kData / "labels_6x4.tif");
  CHECK(m.width == 6);
  CHECK(m.height == 4);
  CHECK(m.bit_depth == 8);
  for (std::uint32_t i = 0; i < m.pixels.size(); ++i) CHECK(m.pixels[i] == (i % 6) / 2);
}

TEST_CASE("unsupported inputs") {
  TempDir tmp;
  CHECK_THROWS_AS(load_raster(kData / "rgb_4x4.tif"), Error);
  try {
    load_raster(kData / "rgb_4x4.tif");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnsupportedFormat);
  }
  try {
    load_raster(tmp.path / "missing.tif");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
  {
    std::ofstream(tmp.path / "junk.tif") << "hello world";
  }
  CHECK_THROWS_AS(load_raster(tmp.path / "junk.tif"), Error);
  CHECK_THROWS_AS(save_raster(Raster(2, 2, 16, 1), tmp.path / "no" / "dir" / "x.tif"), Error);
}

TEST_CASE("save/load round trips") {
  TempDir tmp;
  const Raster c(4, 4, 16, 7);
  save_raster(c, tmp.path / "c.tif");
  CHECK(load_raster(tmp.path / "c.tif") == c);

  const Raster one(1, 1, 16, 65535);
  save_raster(one, tmp.path / "one.tif");
  CHECK(load_raster(tmp.path / "one.tif") == one);
  save_raster(one, tmp.path / "one.agrw");
  CHECK(load_raster(tmp.path / "one.agrw") == one);

  std::mt19937 rng(1);
  for (int seed = 0; seed < 100; ++seed) {
    Raster r(64, 64, 16, 0);
    for (auto& p : r.pixels) p = static_cast<std::uint16_t>(rng());
    const fs::path p = tmp.path / (seed % 2 ? "r.tif" : "r.raw");
    save_raster(r, p);
    CHECK(load_raster(p) == r);
  }

  Raster eight(5, 3, 8, 0);
  for (std::size_t i = 0; i < eight.pixels.size(); ++i) eight.pixels[i] = static_cast<std::uint16_t>(i * 17);
  save_raster(eight, tmp.path / "e.tif");
  CHECK(load_raster(tmp.path / "e.tif") == eight);
}

TEST_CASE("raw fixture format") {
  Raster r(3, 2, 12, 0);
  r.pixels = {0, 1, 2, 4095, 7, 9};
  const auto bytes = encode_raw(r);
  REQUIRE(bytes.size() == 4 + 4 + 4 + 1 + 12);
  CHECK(bytes[0] == 'A');
  CHECK(bytes[4] == 3);
  CHECK(bytes[12] == 12);
  CHECK(bytes[13 + 6] == 0xFF);
  CHECK(bytes[13 + 7] == 0x0F);
  CHECK(decode_raw(bytes) == r);
  auto cut = bytes;
  cut.pop_back();
  CHECK_THROWS_AS(decode_raw(cut), Error);
  auto deep = bytes;
  deep[12] = 17;
  CHECK_THROWS_AS(decode_raw(deep), Error);
}

TEST_CASE("raster invariants") {
  Raster bad(2, 2, 4, 0);
  bad.pixels[3] = 16;
  CHECK_THROWS_AS(bad.validate(), Error);
  CHECK_THROWS_AS(Raster(0, 3).validate(), Error);
  Raster short_px(2, 2);
  short_px.pixels.pop_back();
  CHECK_THROWS_AS(short_px.validate(), Error);
  CHECK(bits_for(0) == 1);
  CHECK(bits_for(1) == 1);
  CHECK(bits_for(2) == 2);
  CHECK(bits_for(65535) == 16);
}

TEST_CASE("image statistics") {
  SUBCASE("constant") {
    const auto s = compute_stats(Raster(9, 9, 16, 321));
    CHECK(s.gini == 0.0);
    CHECK(s.shannon_entropy == 0.0);
    CHECK(s.distinct_values == 1);
    CHECK(s.background_fraction == 0.0);
  }
  SUBCASE("fair coin") {
    Raster r(8, 8, 16, 0);
    for (std::size_t i = 0; i < 32; ++i) r.pixels[i] = 1;
    CHECK(compute_stats(r).shannon_entropy == doctest::Approx(1.0));
  }
  SUBCASE("single bright pixel") {
    Raster r(16, 16, 16, 0);
    r.pixels[77] = 1000;
    CHECK(compute_stats(r).gini == doctest::Approx(255.0 / 256.0));
    CHECK(compute_stats(r).background_fraction == doctest::Approx(255.0 / 256.0));
  }
  SUBCASE("gini against the pair sum") {
    std::mt19937 rng(3);
    for (int i = 0; i < 30; ++i) {
      Raster r(1 + rng() % 12, 1 + rng() % 12, 16, 0);
      const std::uint32_t span = 1u + rng() % 2000;
      for (auto& p : r.pixels) p = static_cast<std::uint16_t>(rng() % 3 ? 0 : rng() % span);
      const double g = compute_stats(r).gini;
      CHECK(g == doctest::Approx(gini_by_pairs(r.pixels)).epsilon(1e-9));
      CHECK(g >= 0.0);
      CHECK(g <= 1.0);
      auto shuffled = r;
      std::shuffle(shuffled.pixels.begin(), shuffled.pixels.end(), rng);
      CHECK(compute_stats(shuffled).gini == doctest::Approx(g).epsilon(1e-12));
    }
  }
  SUBCASE("entropy ignores relabeling") {
    std::mt19937 rng(4);
    Raster r(20, 20, 16, 0);
    for (auto& p : r.pixels) p = static_cast<std::uint16_t>(rng() % 7);
    Raster q = r;
    for (auto& p : q.pixels) p = static_cast<std::uint16_t>(60000 - p * 1000);
    CHECK(compute_stats(q).shannon_entropy == doctest::Approx(compute_stats(r).shannon_entropy));
  }
  SUBCASE("range and spread") {
    Raster r(2, 1, 16, 0);
    r.pixels = {10, 30};
    const auto s = compute_stats(r);
    CHECK(s.dynamic_range.first == 10);
    CHECK(s.dynamic_range.second == 30);
    CHECK(s.std_dev == doctest::Approx(10.0));
    CHECK(s.normalized_std_dev == doctest::Approx(0.5));
  }
}
