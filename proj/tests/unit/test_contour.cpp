#include <doctest.h>

#include "agcr/contour.hpp"
#include "fixtures.hpp"

using namespace agcr;
using fixtures::PixelSet;

namespace {

bool members_only(const GeometricContour& c, const PixelRegion& r) {
  const PixelMask m = r.mask();
  for (const Vertex& v : c.outer)
    if (!m.test(v)) return false;
  return true;
}

ToleranceRaster raster_of(std::uint32_t w, std::uint32_t h, std::initializer_list<int> cells) {
  ToleranceRaster t(w, h);
  std::size_t i = 0;
  for (int c : cells) t.cells[i++] = static_cast<std::uint8_t>(c);
  return t;
}

}  // namespace

TEST_CASE("extract_regions partitions a raster") {
  SUBCASE("constant raster") {
    const ToleranceRaster t(5, 4, 2);
    const auto regions = extract_regions(t);
    REQUIRE(regions.size() == 1);
    CHECK(regions[0].area() == 20);
    CHECK(regions[0].tolerance == 2);
  }
  SUBCASE("diagonals are not connected") {
    const auto regions = extract_regions(raster_of(2, 2, {0, 1, 1, 0}));
    CHECK(regions.size() == 4);
  }
  SUBCASE("matches a BFS flood-fill oracle") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      ToleranceRaster t(32, 32);
      for (auto& c : t.cells) c = static_cast<std::uint8_t>(rng() % 3);
      const auto regions = extract_regions(t);
      // Oracle: a pair of pixels shares a region iff BFS connects them.
      std::vector<int> comp(t.cells.size(), -1);
      int ncomp = 0;
      for (std::size_t s = 0; s < t.cells.size(); ++s) {
        if (comp[s] >= 0) continue;
        std::vector<std::size_t> q{s};
        comp[s] = ncomp;
        for (std::size_t qi = 0; qi < q.size(); ++qi) {
          const std::size_t i = q[qi];
          const int x = static_cast<int>(i % 32), y = static_cast<int>(i / 32);
          const int nb[4][2] = {{x + 1, y}, {x - 1, y}, {x, y + 1}, {x, y - 1}};
          for (auto& n : nb) {
            if (n[0] < 0 || n[1] < 0 || n[0] >= 32 || n[1] >= 32) continue;
            const std::size_t j = static_cast<std::size_t>(n[1]) * 32 + n[0];
            if (comp[j] < 0 && t.cells[j] == t.cells[i]) {
              comp[j] = ncomp;
              q.push_back(j);
            }
          }
        }
        ++ncomp;
      }
      REQUIRE(regions.size() == static_cast<std::size_t>(ncomp));
      std::size_t covered = 0;
      for (const auto& r : regions) {
        const int id = comp[static_cast<std::size_t>(r.pixels[0].y) * 32 + r.pixels[0].x];
        for (const auto& p : r.pixels) CHECK(comp[static_cast<std::size_t>(p.y) * 32 + p.x] == id);
        covered += r.area();
      }
      CHECK(covered == t.cells.size());
    }
  }
}

TEST_CASE("rasterize_segment") {
  CHECK(rasterize_segment({0, 0}, {0, 0}) == std::vector<Vertex>{{0, 0}});
  CHECK(rasterize_segment({0, 0}, {3, 0}) == std::vector<Vertex>{{0, 0}, {1, 0}, {2, 0}, {3, 0}});
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> c(-20, 20);
  for (int i = 0; i < 2000; ++i) {
    const Vertex a{c(rng), c(rng)}, b{c(rng), c(rng)};
    const auto ab = rasterize_segment(a, b);
    PixelSet s_ab, s_ba;
    for (auto v : ab) s_ab.insert({v.x, v.y});
    for (auto v : rasterize_segment(b, a)) s_ba.insert({v.x, v.y});
    CHECK(s_ab == s_ba);
    CHECK(s_ab == fixtures::oracle_line(a, b));
  }
  CHECK(fixtures::oracle_line({0, 0}, {2, 1}).size() == 3);
}

TEST_CASE("trace_contour worked examples") {
  SUBCASE("single pixel") {
    PixelRegion r;
    r.pixels = {{2, 3}};
    r.bbox.expand(Vertex{2, 3});
    const auto c = trace_contour(r);
    CHECK(c.outer == std::vector<Vertex>{{2, 3}});
    CHECK(c.holes.empty());
  }
  SUBCASE("1x3 bar") {
    const auto r = fixtures::region_from_art({"###"});
    const auto c = contour_region(r);
    CHECK(c.outer.size() <= 2);
    CHECK(fixtures::pixel_set(fill_region(c)) == fixtures::pixel_set(r));
  }
  SUBCASE("3x3 block gives its four corners counterclockwise") {
    const auto r = fixtures::region_from_art({"###", "###", "###"});
    const auto c = trace_contour(r);
    CHECK(c.outer == std::vector<Vertex>{{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  }
  SUBCASE("staircase beats the axis-aligned trace") {
    const auto r = fixtures::adversarial_regions()[5].second;
    REQUIRE(r.area() == 6);
    CHECK(axis_aligned_vertex_count(r) == 12);
    const auto c = contour_region(r);
    CHECK(c.vertex_count() < 12);
    CHECK(fixtures::pixel_set(fill_region(c)) == fixtures::pixel_set(r));
  }
  SUBCASE("solid rectangles have four vertices") {
    for (int w = 2; w <= 9; ++w)
      for (int h = 2; h <= 9; ++h) {
        std::vector<std::string> rows(h, std::string(w, '#'));
        CHECK(contour_region(fixtures::region_from_art(rows)).outer.size() == 4);
      }
  }
  SUBCASE("bars have at most two vertices") {
    for (int n = 1; n <= 12; ++n) {
      CHECK(contour_region(fixtures::region_from_art({std::string(n, '#')})).outer.size() <= 2);
      std::vector<std::string> col(n, "#");
      CHECK(contour_region(fixtures::region_from_art(col)).outer.size() <= 2);
    }
  }
}

TEST_CASE("contours are pixel-perfect on the adversarial set") {
  for (const auto& [name, r] : fixtures::adversarial_regions()) {
    CAPTURE(name);
    const auto traced = trace_contour(r);
    const auto opt = optimize_contour(traced, r);
    const PixelSet want = fixtures::pixel_set(r);
    CHECK(fixtures::pixel_set(fill_region(traced)) == want);
    CHECK(fixtures::pixel_set(fill_region(opt)) == want);
    CHECK(fixtures::oracle_fill(opt) == want);
    CHECK(members_only(opt, r));
    CHECK(opt.vertex_count() <= traced.vertex_count());
    CHECK(optimize_contour(opt, r) == opt);
  }
}

TEST_CASE("contours are pixel-perfect on random regions") {
  std::mt19937 rng(2024);
  for (int i = 0; i < 300; ++i) {
    const auto r = fixtures::random_region(rng, 24);
    CAPTURE(i);
    const auto traced = trace_contour(r);
    const auto opt = optimize_contour(traced, r);
    const PixelSet want = fixtures::pixel_set(r);
    REQUIRE(fixtures::pixel_set(fill_region(opt)) == want);
    CHECK(fixtures::oracle_fill(opt) == want);
    CHECK(members_only(traced, r));
    CHECK(opt.vertex_count() <= traced.vertex_count());
    CHECK(optimize_contour(opt, r) == opt);
  }
}

TEST_CASE("fill is symmetric under mirroring") {
  std::mt19937 rng(77);
  for (int i = 0; i < 50; ++i) {
    const auto r = fixtures::random_region(rng, 20);
    PixelRegion m;
    m.tolerance = r.tolerance;
    for (const auto& p : r.pixels) m.pixels.push_back({-p.x, p.y});
    std::sort(m.pixels.begin(), m.pixels.end(),
              [](Vertex a, Vertex b) { return std::pair(a.y, a.x) < std::pair(b.y, b.x); });
    for (const auto& p : m.pixels) m.bbox.expand(p);
    PixelSet mirrored;
    for (const auto& [x, y] : fixtures::pixel_set(fill_region(contour_region(r)))) mirrored.insert({-x, y});
    CHECK(fixtures::pixel_set(fill_region(contour_region(m))) == mirrored);
  }
}

TEST_CASE("optimize_contour") {
  SUBCASE("rectangle unchanged") {
    const auto r = fixtures::region_from_art({"####", "####", "####"});
    const GeometricContour c{{{0, 0}, {3, 0}, {3, 2}, {0, 2}}, {}};
    CHECK(optimize_contour(c, r) == c);
  }
  SUBCASE("collinear middle vertex removed") {
    const auto r = fixtures::region_from_art({"#####", "#####", "#####"});
    const GeometricContour c{{{0, 0}, {2, 0}, {4, 0}, {4, 2}, {0, 2}}, {}};
    const auto o = optimize_contour(c, r);
    CHECK(o.outer == std::vector<Vertex>{{0, 0}, {4, 0}, {4, 2}, {0, 2}});
  }
}

TEST_CASE("reduce_contour") {
  SUBCASE("budget above the count is the identity") {
    const auto r = fixtures::region_from_art({"#####", "#...#", "#####"});
    const auto c = contour_region(r);
    CHECK(reduce_contour(c, r.area(), 100) == c);
  }
  SUBCASE("100-vertex ring with 10 per 100 px keeps at most 10") {
    GeometricContour c;
    for (int i = 0; i < 100; ++i) {
      const double a = 2 * 3.14159265358979 * i / 100;
      c.outer.push_back({static_cast<std::int32_t>(std::lround(40 * std::cos(a))),
                         static_cast<std::int32_t>(std::lround(40 * std::sin(a)))});
    }
    const auto out = reduce_contour(c, 100, 10);
    CHECK(out.vertex_count() <= 10);
    CHECK(out.outer.size() >= 3);
  }
  SUBCASE("respects the global budget on ragged regions") {
    std::mt19937 rng(5);
    for (int i = 0; i < 40; ++i) {
      const auto r = fixtures::random_region(rng, 40);
      const auto c = contour_region(r);
      const auto out = reduce_contour(c, r.area(), 4);
      const std::size_t budget = std::max<std::size_t>(3, (r.area() + 99) / 100 * 4);
      CHECK(out.vertex_count() <= std::max(budget, std::min<std::size_t>(3, c.outer.size())));
      CHECK(out.vertex_count() <= c.vertex_count());
    }
  }
}
