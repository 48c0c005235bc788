#include <doctest.h>

#include <random>

#include "agcr/decode.hpp"
#include "agcr/error.hpp"
#include "agcr/region_store.hpp"
#include "fixtures.hpp"

using namespace agcr;

namespace {

ToleranceRaster random_labels(std::mt19937& rng, std::uint32_t w, std::uint32_t h, int k, int blockiness) {
  ToleranceRaster t(w, h);
  for (std::uint32_t y = 0; y < h; ++y)
    for (std::uint32_t x = 0; x < w; ++x)
      t.cells[std::size_t{y} * w + x] = static_cast<std::uint8_t>(
          ((x / blockiness) * 7 + (y / blockiness) * 13 + (rng() % 5 == 0 ? rng() : 0)) % k);
  return t;
}

RegionRecord square(std::int32_t x, std::int32_t y, std::int32_t side, std::uint8_t tol) {
  RegionRecord r;
  r.contour.outer = {{x, y}, {x + side - 1, y}, {x + side - 1, y + side - 1}, {x, y + side - 1}};
  r.tolerance = tol;
  r.area = static_cast<std::size_t>(side) * side;
  r.bbox = bounds_of(r.contour.outer);
  return r;
}

}  // namespace

TEST_CASE("min_region_size") {
  CHECK(min_region_size(1000, 1000) == 32);
  CHECK(min_region_size(4096, 4096) == 67);
  CHECK(min_region_size(1, 1) == 32);
  CHECK(min_region_size(10000, 10000) == 400);
}

TEST_CASE("sign-bit deltas") {
  CHECK(signbit_encode(3) == 6);
  CHECK(signbit_encode(-3) == 7);
  CHECK(signbit_encode(0) == 0);
  for (std::int64_t d = -1000; d <= 1000; ++d) {
    const std::uint64_t u = signbit_encode(d);
    CHECK(u == static_cast<std::uint64_t>(d < 0 ? -d : d) * 2 + (d < 0 ? 1 : 0));
    CHECK(signbit_decode(u) == d);
  }
  CHECK(signbit_decode(signbit_encode(-(1ll << 31) + 1)) == -(1ll << 31) + 1);
}

TEST_CASE("sort_regions orders by area then position") {
  std::vector<RegionRecord> v{square(5, 5, 2, 1), square(0, 0, 3, 1), square(1, 0, 2, 0), square(0, 9, 2, 1)};
  sort_regions(v);
  CHECK(v[0].area == 9);
  CHECK(v[1].bbox.y0 == 0);
  CHECK(v[1].bbox.x0 == 1);
  CHECK(v[2].bbox.y0 == 5);
  CHECK(v[3].bbox.y0 == 9);
}

TEST_CASE("shape stream round trip") {
  SUBCASE("empty list") {
    const auto bytes = serialize_regions({});
    CHECK(deserialize_regions(bytes, 4, 4).empty());
  }
  SUBCASE("identical squares become a dictionary reference") {
    const std::vector<RegionRecord> v{square(1, 1, 4, 1), square(10, 3, 4, 2)};
    ShapeStreamStats st;
    const auto bytes = serialize_regions(v, {}, &st);
    CHECK(st.stored_vertices == 4);
    CHECK(st.dictionary_hits == 1);
    CHECK(deserialize_regions(bytes, 20, 20) == v);
  }
  SUBCASE("random region sets keep order, tolerances and vertices") {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
      const auto t = random_labels(rng, 40, 30, 3, 1 + trial % 4);
      std::vector<RegionRecord> v;
      for (const auto& r : extract_regions(t)) {
        RegionRecord rec;
        rec.contour = contour_region(r);
        rec.tolerance = r.tolerance;
        rec.area = r.area();
        rec.bbox = r.bbox;
        v.push_back(std::move(rec));
        if (v.size() == 50) break;
      }
      sort_regions(v);
      CHECK(deserialize_regions(serialize_regions(v), 40, 30) == v);
    }
  }
  SUBCASE("vertices outside the image are rejected") {
    const std::vector<RegionRecord> v{square(1, 1, 4, 1)};
    const auto bytes = serialize_regions(v);
    CHECK_THROWS_AS(deserialize_regions(bytes, 4, 4), CorruptError);
  }
}

TEST_CASE("background elimination keeps the decode exact") {
  SUBCASE("solid background plus one blob stores only the blob") {
    ToleranceRaster t(64, 64, 0);
    for (int y = 20; y < 40; ++y)
      for (int x = 10; x < 30; ++x) t.cells[static_cast<std::size_t>(y) * 64 + x] = 1;
    StoreOptions o;
    const auto set = build_region_set(t, o);
    REQUIRE(set.records.size() == 1);
    CHECK(set.records[0].tolerance == 1);
    CHECK(reconstruct_tolerance(set.records, 64, 64, 0, 1) == t);
  }
  SUBCASE("nested squares keep the inner background region") {
    // t=0 ring, t=1 square, t=0 inner square: the inner one must survive
    // unless the hole is stored.
    ToleranceRaster t(40, 40, 0);
    for (int y = 5; y < 35; ++y)
      for (int x = 5; x < 35; ++x) t.cells[static_cast<std::size_t>(y) * 40 + x] = 1;
    for (int y = 15; y < 25; ++y)
      for (int x = 15; x < 25; ++x) t.cells[static_cast<std::size_t>(y) * 40 + x] = 0;
    const auto set = build_region_set(t, StoreOptions{});
    CHECK(reconstruct_tolerance(set.records, 40, 40, 0, 1) == t);
    CHECK(set.decoded == t);
  }
  SUBCASE("random label rasters under every background") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 12; ++trial) {
      const auto t = random_labels(rng, 48, 40, 2 + trial % 3, 3 + trial % 5);
      for (std::uint8_t bg = 0; bg < 2; ++bg) {
        StoreOptions o;
        o.background = bg;
        o.absorb_small = false;
        const auto set = build_region_set(t, o);
        CHECK(set.decoded == t);
        CHECK(reconstruct_tolerance(set.records, 48, 40, bg, 3) == t);
        CHECK(set.vertices_after <= set.vertices_before);
      }
    }
  }
}

TEST_CASE("absorb_small_regions removes sub-m regions") {
  std::mt19937 rng(8);
  auto t = random_labels(rng, 64, 64, 3, 2);
  absorb_small_regions(t, 32);
  std::size_t small = 0;
  for (const auto& r : extract_regions(t)) small += r.area() < 32;
  CHECK(small == 0);
  ToleranceRaster one(5, 5, 2);
  CHECK(absorb_small_regions(one, 32) == 0);
}

TEST_CASE("reduction keeps the stored set consistent with its own decode") {
  std::mt19937 rng(12);
  const auto t = random_labels(rng, 64, 48, 2, 1);
  StoreOptions o;
  o.reduce_per_100px = 2;
  const auto set = build_region_set(t, o);
  CHECK(reconstruct_tolerance(set.records, 64, 48, 0, 2) == set.decoded);
}

TEST_CASE("fill segment plans") {
  std::vector<RegionRecord> v;
  for (int i = 0; i < 10; ++i) v.push_back(square(i, i, 1 + i % 3, 1));
  for (unsigned t : {1u, 2u, 3u, 8u, 32u}) {
    const auto plan = FillSegmentPlan::make(v, t);
    CHECK(plan.segments.size() <= std::min<std::size_t>(t, v.size()));
    std::size_t next = 0;
    for (auto [b, e] : plan.segments) {
      CHECK(b == next);
      CHECK(e > b);
      next = e;
    }
    CHECK(next == v.size());
  }
  CHECK(FillSegmentPlan::make({}, 4).segments.empty());
}
