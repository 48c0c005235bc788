#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "agcr/contour.hpp"
#include "agcr/error.hpp"
#include "agcr/threshold.hpp"
#include "fixtures.hpp"

using namespace agcr;

namespace {

Raster raster_of(std::uint32_t w, std::uint32_t h, std::vector<std::uint16_t> px) {
  Raster r(w, h, 16, 0);
  r.pixels = std::move(px);
  return r;
}

// Between-class variance for every t, background {v < t}.
std::uint32_t otsu_brute(const std::vector<std::uint64_t>& hist) {
  long double best = -1;
  std::uint32_t arg = 0;
  for (std::uint32_t t = 1; t < hist.size(); ++t) {
    long double n0 = 0, n1 = 0, s0 = 0, s1 = 0;
    for (std::uint32_t v = 0; v < hist.size(); ++v) {
      if (v < t) {
        n0 += hist[v];
        s0 += static_cast<long double>(v) * hist[v];
      } else {
        n1 += hist[v];
        s1 += static_cast<long double>(v) * hist[v];
      }
    }
    if (n0 == 0 || n1 == 0) continue;
    const long double d = s0 / n0 - s1 / n1;
    const long double var = n0 * n1 * d * d;
    if (var > best * (1 + 1e-12L)) {
      best = var;
      arg = t;
    }
  }
  return arg;
}

// Direct 2D convolution with the outer-product kernel.
Raster blur_2d(const Raster& r, double sigma) {
  const int rad = static_cast<int>(std::ceil(3 * sigma));
  std::vector<double> k;
  double norm = 0;
  for (int i = -rad; i <= rad; ++i) {
    k.push_back(std::exp(-i * i / (2 * sigma * sigma)));
    norm += k.back();
  }
  Raster out(r.width, r.height, r.bit_depth, 0);
  const int w = static_cast<int>(r.width), h = static_cast<int>(r.height);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double acc = 0;
      for (int j = -rad; j <= rad; ++j)
        for (int i = -rad; i <= rad; ++i) {
          const int xx = std::clamp(x + i, 0, w - 1), yy = std::clamp(y + j, 0, h - 1);
          acc += k[i + rad] * k[j + rad] * r.at(static_cast<std::uint32_t>(xx), static_cast<std::uint32_t>(yy));
        }
      out.at(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y)) =
          static_cast<std::uint16_t>(std::lround(acc / (norm * norm)));
    }
  return out;
}

void check_partition(const ThresholdPlan& p, std::uint32_t n) {
  REQUIRE(!p.bins.empty());
  CHECK(p.bins.front().lo == 0);
  CHECK(p.bins.back().hi == n - 1);
  for (std::size_t i = 1; i < p.bins.size(); ++i) CHECK(p.bins[i].lo == p.bins[i - 1].hi + 1);
}

}  // namespace

TEST_CASE("histogram packing") {
  const Raster r = raster_of(4, 1, {5, 9, 9, 200});
  const auto pk = histogram_pack(r);
  CHECK(pk.packed.pixels == std::vector<std::uint16_t>{0, 1, 1, 2});
  CHECK(pk.transform.distinct_values == std::vector<std::uint16_t>{5, 9, 200});
  CHECK(histogram_unpack(pk.packed, pk.transform, 16) == r);
  CHECK(pk.transform.pack(10) == 2);
  CHECK(pk.transform.pack(9) == 1);

  const Raster id = raster_of(3, 1, {0, 1, 2});
  CHECK(histogram_pack(id).packed.pixels == id.pixels);

  Raster bad = pk.packed;
  bad.pixels[0] = 3;
  for (auto fn : {+[](const Raster& b, const PackingTransform& t) { (void)histogram_unpack(b, t, 16); },
                  +[](const Raster&, const PackingTransform& t) { (void)t.unpack(3); }}) {
    try {
      fn(bad, pk.transform);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kCorrupt);
    }
  }

  std::mt19937 rng(2);
  for (int i = 0; i < 50; ++i) {
    Raster s(32, 32, 16, 0);
    for (auto& p : s.pixels) p = static_cast<std::uint16_t>(rng() % 4 ? 0 : rng());
    const auto sp = histogram_pack(s);
    auto sorted = s.pixels;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t j = 0; j < s.pixels.size(); ++j)
      CHECK(sp.packed.pixels[j] ==
            std::lower_bound(sorted.begin(), sorted.end(), s.pixels[j]) - sorted.begin());
    CHECK(*std::max_element(sp.packed.pixels.begin(), sp.packed.pixels.end()) == sorted.size() - 1);
    CHECK(histogram_unpack(sp.packed, sp.transform, 16) == s);
  }
}

TEST_CASE("bin construction") {
  SUBCASE("constant histogram") {
    const std::vector<std::uint64_t> h{100};
    const auto p = build_bins(h, 0.0, std::nullopt);
    CHECK(p.k() == 1);
    CHECK(p.bins[0] == Bin{0, 0, 100});
  }
  SUBCASE("two separated masses") {
    // [0,3] halves to [0,1] and [2,3]; both spans are below 4 so recursion stops.
    const std::vector<std::uint64_t> h{40, 10, 10, 40};
    const auto p = build_bins(h, 0.5, std::nullopt);
    REQUIRE(p.k() == 2);
    CHECK(p.bins[0] == Bin{0, 1, 50});
    CHECK(p.bins[1] == Bin{2, 3, 50});
    CHECK(build_bins(h, 0.4, std::nullopt).k() == 1);
  }
  SUBCASE("floor merges the bins below it") {
    const std::vector<std::uint64_t> h(16, 100);
    const auto natural = build_bins(h, 0.99, std::nullopt);
    CHECK(natural.k() == 8);
    const auto p = build_bins(h, 0.99, 6u);
    REQUIRE(p.k() == 6);
    CHECK(p.bins[0] == Bin{0, 5, 600});
    CHECK(p.floor == 6u);
  }
  SUBCASE("bins partition the packed range") {
    std::mt19937 rng(9);
    for (int i = 0; i < 200; ++i) {
      std::vector<std::uint64_t> h(1 + rng() % 300);
      for (auto& c : h) c = 1 + rng() % 50;
      const double g = std::uniform_real_distribution<double>(0, 1)(rng);
      const auto p = build_bins(h, g, std::nullopt);
      check_partition(p, static_cast<std::uint32_t>(h.size()));
      std::uint64_t total = 0;
      for (auto c : h) total += c;
      if (p.k() > 1)
        for (const auto& b : p.bins)
          CHECK(static_cast<double>(b.count) / static_cast<double>(total) >= (1 - g) - 1e-9);
    }
  }
  SUBCASE("max_bins caps the count") {
    const std::vector<std::uint64_t> h(64, 10);
    BinOptions o;
    o.probability_cap = 0.0;
    o.max_bins = 3;
    const auto p = build_bins(h, 0.5, std::nullopt, o);
    CHECK(p.k() == 3);
    check_partition(p, 64);
  }
  SUBCASE("max_bins keeps the widest intensity gap") {
    // Four noise levels near 0 and four near 4000; the small bright class
    // must not be folded into the noise.
    const std::vector<std::uint64_t> h = {960, 960, 960, 960, 64, 64, 64, 64};
    const std::vector<std::uint16_t> values = {0, 1, 2, 3, 4000, 4001, 4002, 4003};
    BinOptions o;
    o.probability_cap = 0.0;
    o.max_bins = 2;
    o.min_bin_bits = 1;
    o.intensities = values;
    const auto p = build_bins(h, 0.5, std::nullopt, o);
    REQUIRE(p.k() == 2);
    CHECK(p.bins[0].hi == 3);
    CHECK(p.bins[1].lo == 4);
  }
}

TEST_CASE("Otsu threshold") {
  std::vector<std::uint64_t> bimodal(11, 0);
  bimodal[0] = 100;
  bimodal[10] = 100;
  const auto t = otsu_floor(bimodal);
  CHECK(t >= 1);
  CHECK(t <= 10);
  CHECK(t == otsu_brute(bimodal));
  CHECK(t == 1);

  CHECK(otsu_floor(std::vector<std::uint64_t>{90, 10}) == otsu_brute({90, 10}));
  CHECK(otsu_floor(std::vector<std::uint64_t>{5, 5, 5, 5}) == otsu_brute({5, 5, 5, 5}));
  CHECK(otsu_floor(std::vector<std::uint64_t>{5, 5, 5, 5}) == 2);

  std::mt19937 rng(12);
  for (int i = 0; i < 100; ++i) {
    std::vector<std::uint64_t> h(2 + rng() % 40);
    for (auto& c : h) c = rng() % 3 ? rng() % 100 : 0;
    h.front() += 1;
    h.back() += 1;
    CHECK(otsu_floor(h) == otsu_brute(h));
  }
  CHECK_THROWS_AS(otsu_floor(std::vector<std::uint64_t>{0, 7, 0}), Error);
}

TEST_CASE("Gaussian blur") {
  std::mt19937 rng(5);
  Raster r(13, 11, 16, 0);
  for (auto& p : r.pixels) p = static_cast<std::uint16_t>(rng() % 60000);
  CHECK(gaussian_blur(r, 0.0) == r);
  CHECK_THROWS_AS(gaussian_blur(r, -1.0), Error);

  const Raster flat(10, 10, 16, 4321);
  for (double s : {0.5, 1.0, 5.0}) CHECK(gaussian_blur(flat, s) == flat);

  Raster impulse(9, 9, 16, 0);
  impulse.at(4, 4) = 10000;
  const Raster b = gaussian_blur(impulse, 1.0);
  const auto mx = *std::max_element(b.pixels.begin(), b.pixels.end());
  CHECK(b.at(4, 4) == mx);
  long mass = 0;
  for (auto v : b.pixels) mass += v;
  CHECK(std::abs(mass - 10000) <= 81);

  for (double s : {0.7, 1.0, 2.5}) {
    const Raster fast = gaussian_blur(r, s), slow = blur_2d(r, s);
    for (std::size_t i = 0; i < fast.pixels.size(); ++i)
      CHECK(std::abs(static_cast<int>(fast.pixels[i]) - static_cast<int>(slow.pixels[i])) <= 1);
  }
}

TEST_CASE("tolerance rasters") {
  const Raster packed = raster_of(4, 1, {0, 1, 2, 3});
  ThresholdPlan one;
  one.bins = {Bin{0, 3, 4}};
  CHECK(tolerance_raster(packed, one).cells == std::vector<std::uint8_t>{0, 0, 0, 0});
  ThresholdPlan two;
  two.bins = {Bin{0, 1, 2}, Bin{2, 3, 2}};
  CHECK(tolerance_raster(packed, two).cells == std::vector<std::uint8_t>{0, 0, 1, 1});

  Raster tmpl(4, 1, 8, 0);
  tmpl.pixels = {2, 0, 1, 2};
  CHECK(tolerance_raster(packed, ThresholdPlan{}, &tmpl).cells == std::vector<std::uint8_t>{2, 0, 1, 2});
  Raster small(3, 1, 8, 0);
  CHECK_THROWS_AS(tolerance_raster(packed, ThresholdPlan{}, &small), Error);
  Raster wide(4, 1, 16, 0);
  wide.pixels[1] = 256;
  CHECK_THROWS_AS(tolerance_raster(packed, ThresholdPlan{}, &wide), Error);
}

TEST_CASE("auto-tune") {
  SUBCASE("constant image") {
    const auto pk = histogram_pack(Raster(16, 16, 16, 9));
    const auto t = auto_tune(pk.packed, 0.0);
    CHECK(t.plan.k() == 1);
    CHECK(t.sigma == 0.0);
    CHECK(t.regions == 1);
  }
  // Each level carries two values: a two-valued histogram spans one bit and
  // is never split.
  SUBCASE("strictly two-valued images stay at k = 1") {
    Raster r(16, 16, 16, 0);
    for (std::uint32_t y = 0; y < 16; ++y)
      for (std::uint32_t x = 0; x < 16; ++x) r.at(x, y) = (x + y) % 2 ? 1000 : 0;
    CHECK(auto_tune(histogram_pack(r).packed, 0.5).plan.k() == 1);
  }
  SUBCASE("checkerboard escalates sigma in steps of five") {
    Raster r(16, 16, 16, 0);
    for (std::uint32_t y = 0; y < 16; ++y)
      for (std::uint32_t x = 0; x < 16; ++x) r.at(x, y) = static_cast<std::uint16_t>(((x + y) % 2 ? 1000 : 0) + (x / 2 + y) % 2);
    const auto pk = histogram_pack(r);
    const auto t = auto_tune(pk.packed, 0.5);
    REQUIRE(t.plan.k() == 2);
    REQUIRE(t.sigma_trace.size() >= 2);
    for (std::size_t i = 0; i < t.sigma_trace.size(); ++i) CHECK(t.sigma_trace[i] == 5.0 * static_cast<double>(i));
    CHECK(t.sigma > 0.0);
    CHECK(t.regions <= 20);
  }
  SUBCASE("smooth two-blob image keeps sigma 0") {
    Raster r(32, 32, 16, 0);
    for (std::uint32_t y = 0; y < 32; ++y)
      for (std::uint32_t x = 0; x < 32; ++x) {
        const double d1 = (x - 10.0) * (x - 10.0) + (y - 10.0) * (y - 10.0);
        const double d2 = (x - 22.0) * (x - 22.0) + (y - 22.0) * (y - 22.0);
        r.at(x, y) = static_cast<std::uint16_t>(std::lround(1000 * (std::exp(-d1 / 32) + std::exp(-d2 / 32))));
      }
    const auto stats_g = [&] {
      std::vector<std::uint64_t> h(2001, 0);
      for (auto v : r.pixels) ++h[v];
      return gini_coefficient(h);
    }();
    const auto pk = histogram_pack(r);
    const auto t = auto_tune(pk.packed, stats_g);
    CHECK(t.plan.k() == 2);
    CHECK(t.sigma == 0.0);
    const auto regions = extract_regions(tolerance_raster(pk.packed, t.plan));
    CHECK(regions.size() == 3);
    CHECK(t.regions == regions.size());
  }
}
