#include "fixtures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace fixtures {

namespace {

PixelRegion region_from_pixels(std::vector<Vertex> px) {
  std::sort(px.begin(), px.end(),
            [](Vertex a, Vertex b) { return std::pair(a.y, a.x) < std::pair(b.y, b.x); });
  px.erase(std::unique(px.begin(), px.end()), px.end());
  PixelRegion r;
  r.tolerance = 1;
  r.pixels = std::move(px);
  for (const Vertex& v : r.pixels) r.bbox.expand(v);
  return r;
}

std::vector<std::uint8_t> grid_from_art(const std::vector<std::string>& rows, int& w, int& h) {
  h = static_cast<int>(rows.size());
  w = 0;
  for (const auto& s : rows) w = std::max(w, static_cast<int>(s.size()));
  std::vector<std::uint8_t> g(static_cast<std::size_t>(w) * h, 0);
  for (int r = 0; r < h; ++r) {
    const int y = h - 1 - r;
    for (int x = 0; x < static_cast<int>(rows[r].size()); ++x)
      if (rows[r][x] == '#') g[static_cast<std::size_t>(y) * w + x] = 1;
  }
  return g;
}

}  // namespace

PixelRegion largest_component(const std::vector<std::uint8_t>& grid, int w, int h) {
  std::vector<int> comp(grid.size(), -1);
  std::vector<std::vector<Vertex>> comps;
  for (int start = 0; start < w * h; ++start) {
    if (!grid[start] || comp[start] >= 0) continue;
    const int id = static_cast<int>(comps.size());
    comps.emplace_back();
    std::vector<int> queue{start};
    comp[start] = id;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const int i = queue[qi];
      const int x = i % w;
      const int y = i / w;
      comps[id].push_back({x, y});
      const int nb[4][2] = {{x + 1, y}, {x - 1, y}, {x, y + 1}, {x, y - 1}};
      for (const auto& n : nb) {
        if (n[0] < 0 || n[1] < 0 || n[0] >= w || n[1] >= h) continue;
        const int j = n[1] * w + n[0];
        if (grid[j] && comp[j] < 0) {
          comp[j] = id;
          queue.push_back(j);
        }
      }
    }
  }
  if (comps.empty()) throw std::runtime_error("empty grid");
  auto best = std::max_element(comps.begin(), comps.end(),
                               [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return region_from_pixels(*best);
}

PixelRegion region_from_art(const std::vector<std::string>& rows) {
  int w = 0, h = 0;
  const auto g = grid_from_art(rows, w, h);
  return largest_component(g, w, h);
}

PixelRegion random_region(std::mt19937& rng, int max_side) {
  std::uniform_int_distribution<int> side(2, max_side);
  const int w = side(rng);
  const int h = side(rng);
  std::vector<std::uint8_t> g(static_cast<std::size_t>(w) * h, 0);
  const int style = std::uniform_int_distribution<int>(0, 3)(rng);
  if (style == 0) {
    // Grown blob.
    std::vector<Vertex> frontier{{w / 2, h / 2}};
    g[static_cast<std::size_t>(h / 2) * w + w / 2] = 1;
    const int target = std::uniform_int_distribution<int>(1, std::max(1, w * h * 2 / 3))(rng);
    int count = 1;
    std::vector<Vertex> members{{w / 2, h / 2}};
    while (count < target) {
      const Vertex p = members[std::uniform_int_distribution<std::size_t>(0, members.size() - 1)(rng)];
      const int k = std::uniform_int_distribution<int>(0, 3)(rng);
      const int dx[4] = {1, -1, 0, 0};
      const int dy[4] = {0, 0, 1, -1};
      const Vertex q{p.x + dx[k], p.y + dy[k]};
      if (q.x < 0 || q.y < 0 || q.x >= w || q.y >= h) continue;
      auto& cell = g[static_cast<std::size_t>(q.y) * w + q.x];
      if (!cell) {
        cell = 1;
        members.push_back(q);
        ++count;
      }
    }
  } else if (style == 1 || style == 2) {
    // Thresholded noise near the percolation threshold: ragged, with holes.
    std::bernoulli_distribution on(style == 1 ? 0.62 : 0.75);
    for (auto& c : g) c = on(rng) ? 1 : 0;
  } else {
    // Thin random walk.
    int x = std::uniform_int_distribution<int>(0, w - 1)(rng);
    int y = std::uniform_int_distribution<int>(0, h - 1)(rng);
    const int steps = std::uniform_int_distribution<int>(1, 4 * (w + h))(rng);
    g[static_cast<std::size_t>(y) * w + x] = 1;
    for (int s = 0; s < steps; ++s) {
      switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
        case 0: x = std::min(w - 1, x + 1); break;
        case 1: x = std::max(0, x - 1); break;
        case 2: y = std::min(h - 1, y + 1); break;
        default: y = std::max(0, y - 1); break;
      }
      g[static_cast<std::size_t>(y) * w + x] = 1;
    }
  }
  if (std::find(g.begin(), g.end(), 1) == g.end()) g[0] = 1;
  return largest_component(g, w, h);
}

PixelRegion staircase(int steps, int run) {
  std::vector<Vertex> px;
  int x = 0;
  for (int s = 0; s < steps; ++s) {
    for (int i = 0; i < run; ++i) px.push_back({x + i, s});
    x += run - 1;
  }
  return region_from_pixels(px);
}

std::vector<std::pair<std::string, PixelRegion>> adversarial_regions() {
  std::vector<std::pair<std::string, PixelRegion>> out;
  out.emplace_back("single", region_from_pixels({{2, 3}}));
  out.emplace_back("bar_1x3", region_from_pixels({{0, 0}, {1, 0}, {2, 0}}));
  out.emplace_back("bar_vertical", region_from_pixels({{4, 0}, {4, 1}, {4, 2}, {4, 3}, {4, 4}}));
  out.emplace_back("block_3x3", region_from_art({"###", "###", "###"}));
  out.emplace_back("rect_7x4", region_from_art({"#######", "#######", "#######", "#######"}));
  out.emplace_back("staircase_paper", region_from_pixels({{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}, {3, 2}}));
  for (int run = 2; run <= 5; ++run) out.emplace_back("staircase_run" + std::to_string(run), staircase(6, run));
  out.emplace_back("ring", region_from_art({"#####", "#...#", "#...#", "#...#", "#####"}));
  out.emplace_back("ring_thin_hole", region_from_art({"###", "#.#", "###"}));
  out.emplace_back("two_holes", region_from_art({
                                    "#########",
                                    "#..###..#",
                                    "#..###..#",
                                    "#########",
                                }));
  out.emplace_back("diagonal_holes", region_from_art({
                                         "######",
                                         "#.####",
                                         "##.###",
                                         "###.##",
                                         "######",
                                     }));
  out.emplace_back("hole_with_island_outside", region_from_art({
                                                   "#######",
                                                   "#.....#",
                                                   "#.###.#",
                                                   "#.#.#.#",
                                                   "#.###.#",
                                                   "#.....#",
                                                   "#######",
                                               }));
  out.emplace_back("bridge", region_from_art({
                                 "###.....###",
                                 "###########",
                                 "###.....###",
                             }));
  out.emplace_back("bridge_long_diag", region_from_art({
                                           "###......",
                                           "###......",
                                           "####.....",
                                           "...##....",
                                           "....##...",
                                           ".....####",
                                           "......###",
                                       }));
  out.emplace_back("comb", region_from_art({
                               "#.#.#.#.#.#",
                               "#.#.#.#.#.#",
                               "#.#.#.#.#.#",
                               "###########",
                           }));
  out.emplace_back("comb_down", region_from_art({
                                    "###########",
                                    "#.#.#.#.#.#",
                                    "#.#.#.#.#.#",
                                }));
  out.emplace_back("plus", region_from_art({".#.", "###", ".#."}));
  out.emplace_back("u_shape", region_from_art({"#...#", "#...#", "#####"}));
  out.emplace_back("notch", region_from_art({"####", "#..#", "##.#", "####"}));
  out.emplace_back("pinch", region_from_art({
                                "###..",
                                "###..",
                                "#####",
                                "..###",
                                "..###",
                            }));
  out.emplace_back("diamond", region_from_art({
                                  "...#...",
                                  "..###..",
                                  ".#####.",
                                  "#######",
                                  ".#####.",
                                  "..###..",
                                  "...#...",
                              }));
  {
    // Square spiral corridor.
    const int n = 21;
    std::vector<std::string> rows(n, std::string(n, '.'));
    int x0 = 0, y0 = 0, x1 = n - 1, y1 = n - 1;
    while (x0 <= x1 && y0 <= y1) {
      for (int x = x0; x <= x1; ++x) rows[y0][x] = '#';
      for (int y = y0; y <= y1; ++y) rows[y][x1] = '#';
      for (int x = x0; x <= x1; ++x) rows[y1][x] = '#';
      for (int y = y0 + 2; y <= y1; ++y) rows[y][x0] = '#';
      if (y0 + 2 <= y1) rows[y0 + 2][x0 + 1] = '#';
      x0 += 2;
      y0 += 2;
      x1 -= 2;
      y1 -= 2;
      if (x0 <= x1 && y0 <= y1) rows[y0][x0 - 1] = '.';
    }
    out.emplace_back("spiral", region_from_art(rows));
  }
  {
    // Checkerboard with a connecting spine: every other pixel plus column 0.
    std::vector<std::string> rows(9, std::string(9, '.'));
    for (int y = 0; y < 9; ++y) {
      rows[y][0] = '#';
      for (int x = 0; x < 9; ++x)
        if (y % 2 == 0) rows[y][x] = '#';
    }
    out.emplace_back("ladder", region_from_art(rows));
  }
  {
    std::mt19937 rng(4242);
    std::vector<std::uint8_t> g(48 * 48);
    std::bernoulli_distribution on(0.6);
    for (auto& c : g) c = on(rng);
    out.emplace_back("percolation_48", largest_component(g, 48, 48));
  }
  {
    // Concentric rings joined by a corridor: deep hole nesting of the complement.
    std::vector<std::string> rows(15, std::string(15, '.'));
    for (int r = 0; r < 15; ++r)
      for (int c = 0; c < 15; ++c) {
        const int d = std::min(std::min(r, c), std::min(14 - r, 14 - c));
        if (d % 2 == 0) rows[r][c] = '#';
      }
    for (int r = 0; r <= 7; ++r) rows[r][7] = '#';
    out.emplace_back("concentric", region_from_art(rows));
  }
  return out;
}

PixelSet pixel_set(const PixelRegion& r) {
  PixelSet s;
  for (const Vertex& v : r.pixels) s.insert({v.x, v.y});
  return s;
}

PixelSet pixel_set(const agcr::PixelMask& m) {
  PixelSet s;
  for (const Vertex& v : m.pixels()) s.insert({v.x, v.y});
  return s;
}

PixelSet oracle_line(Vertex a, Vertex b) {
  PixelSet s;
  const long long dx = static_cast<long long>(b.x) - a.x;
  const long long dy = static_cast<long long>(b.y) - a.y;
  if (std::llabs(dx) >= std::llabs(dy)) {
    if (std::pair(b.x, b.y) < std::pair(a.x, a.y)) std::swap(a, b);
    if (a.x == b.x) {
      s.insert({a.x, a.y});
      return s;
    }
    for (int x = a.x; x <= b.x; ++x) {
      const long double y = a.y + static_cast<long double>(x - a.x) * (b.y - a.y) / (b.x - a.x);
      s.insert({x, static_cast<std::int32_t>(std::floor(y + 0.5L))});
    }
  } else {
    if (std::pair(b.y, b.x) < std::pair(a.y, a.x)) std::swap(a, b);
    for (int y = a.y; y <= b.y; ++y) {
      const long double x = a.x + static_cast<long double>(y - a.y) * (b.x - a.x) / (b.y - a.y);
      s.insert({static_cast<std::int32_t>(std::floor(x + 0.5L)), y});
    }
  }
  return s;
}

namespace {

PixelSet oracle_ring_fill(const std::vector<Vertex>& ring) {
  PixelSet s;
  if (ring.empty()) return s;
  const std::size_t n = ring.size();
  int x0 = ring[0].x, x1 = ring[0].x, y0 = ring[0].y, y1 = ring[0].y;
  for (const Vertex& v : ring) {
    x0 = std::min(x0, v.x);
    x1 = std::max(x1, v.x);
    y0 = std::min(y0, v.y);
    y1 = std::max(y1, v.y);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const PixelSet e = oracle_line(ring[i], ring[(i + 1) % n]);
    s.insert(e.begin(), e.end());
  }
  // PNPOLY (W. R. Franklin) with the ray cast to +x.
  for (int py = y0; py <= y1; ++py) {
    for (int px = x0; px <= x1; ++px) {
      bool c = false;
      for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const double xi = ring[i].x, yi = ring[i].y, xj = ring[j].x, yj = ring[j].y;
        if (((yi > py) != (yj > py)) && (px < (xj - xi) * (py - yi) / (yj - yi) + xi)) c = !c;
      }
      if (c) s.insert({px, py});
    }
  }
  return s;
}

}  // namespace

PixelSet oracle_fill(const GeometricContour& c) {
  PixelSet s = oracle_ring_fill(c.outer);
  for (const auto& h : c.holes)
    for (const auto& p : oracle_ring_fill(h)) s.erase(p);
  return s;
}

// Rasters -------------------------------------------------------------------

Raster random_raster(std::mt19937& rng, std::uint32_t w, std::uint32_t h) {
  Raster r(w, h, 16, 0);
  const int style = std::uniform_int_distribution<int>(0, 4)(rng);
  std::uniform_int_distribution<int> full(0, 65535);
  switch (style) {
    case 0:  // white noise, full range
      for (auto& p : r.pixels) p = static_cast<std::uint16_t>(full(rng));
      break;
    case 1: {  // few distinct values scattered over the range
      std::vector<std::uint16_t> palette(std::uniform_int_distribution<int>(1, 12)(rng));
      for (auto& v : palette) v = static_cast<std::uint16_t>(full(rng));
      std::uniform_int_distribution<std::size_t> pick(0, palette.size() - 1);
      for (auto& p : r.pixels) p = palette[pick(rng)];
      break;
    }
    case 2: {  // gradient plus noise
      const double gx = std::uniform_real_distribution<double>(-200, 200)(rng);
      const double gy = std::uniform_real_distribution<double>(-200, 200)(rng);
      std::normal_distribution<double> noise(0, 30);
      const double base = std::uniform_real_distribution<double>(5000, 60000)(rng);
      for (std::uint32_t y = 0; y < h; ++y)
        for (std::uint32_t x = 0; x < w; ++x)
          r.at(x, y) = static_cast<std::uint16_t>(std::clamp(base + gx * x + gy * y + noise(rng), 0.0, 65535.0));
      break;
    }
    case 3:  // sparse blobs
      r = sparse_blob_raster(rng, w, h, std::uniform_int_distribution<int>(1, 5)(rng), 0.1);
      break;
    default: {  // piecewise constant patches with edge noise
      const std::uint32_t cell = std::uniform_int_distribution<std::uint32_t>(2, 16)(rng);
      std::vector<std::uint16_t> lv(16);
      for (auto& v : lv) v = static_cast<std::uint16_t>(full(rng));
      for (std::uint32_t y = 0; y < h; ++y)
        for (std::uint32_t x = 0; x < w; ++x)
          r.at(x, y) = lv[((x / cell) * 7 + (y / cell) * 3) % lv.size()];
      std::bernoulli_distribution flip(0.05);
      for (auto& p : r.pixels)
        if (flip(rng)) p = static_cast<std::uint16_t>(full(rng));
      break;
    }
  }
  return r;
}

Raster sparse_blob_raster(std::mt19937& rng, std::uint32_t w, std::uint32_t h, int blobs,
                          double fg_fraction) {
  Raster r(w, h, 16, 0);
  std::normal_distribution<double> bg(100, 3);
  for (auto& p : r.pixels) p = static_cast<std::uint16_t>(std::clamp(bg(rng), 0.0, 65535.0));
  const double area = fg_fraction * w * h / std::max(1, blobs);
  const double radius = std::max(1.5, std::sqrt(area / 3.14159));
  std::uniform_real_distribution<double> ux(0, w), uy(0, h);
  std::normal_distribution<double> fg_noise(0, 40);
  for (int b = 0; b < blobs; ++b) {
    const double cx = ux(rng), cy = uy(rng);
    const double peak = std::uniform_real_distribution<double>(8000, 50000)(rng);
    for (std::uint32_t y = 0; y < h; ++y)
      for (std::uint32_t x = 0; x < w; ++x) {
        const double d2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
        if (d2 > radius * radius) continue;
        const double v = peak * (1.0 - 0.5 * d2 / (radius * radius)) + fg_noise(rng);
        r.at(x, y) = static_cast<std::uint16_t>(std::clamp(v, 0.0, 65535.0));
      }
  }
  return r;
}

Raster two_region_raster(std::mt19937& rng, std::uint32_t w, std::uint32_t h) {
  Raster r(w, h, 16, 0);
  std::uniform_int_distribution<int> bgv(200, 203), fgv(40000, 40003);
  const double cx = w * std::uniform_real_distribution<double>(0.35, 0.65)(rng);
  const double cy = h * std::uniform_real_distribution<double>(0.35, 0.65)(rng);
  const double rad = std::min(w, h) * std::uniform_real_distribution<double>(0.15, 0.3)(rng);
  for (std::uint32_t y = 0; y < h; ++y)
    for (std::uint32_t x = 0; x < w; ++x) {
      const bool in = (x - cx) * (x - cx) + (y - cy) * (y - cy) <= rad * rad;
      r.at(x, y) = static_cast<std::uint16_t>(in ? fgv(rng) : bgv(rng));
    }
  return r;
}

Raster smooth_blob_field(std::mt19937& rng, std::uint32_t w, std::uint32_t h) {
  Raster r(w, h, 16, 0);
  std::vector<std::array<double, 3>> centers(6);
  for (auto& c : centers)
    c = {std::uniform_real_distribution<double>(0, w)(rng), std::uniform_real_distribution<double>(0, h)(rng),
         std::uniform_real_distribution<double>(w / 12.0, w / 5.0)(rng)};
  for (std::uint32_t y = 0; y < h; ++y)
    for (std::uint32_t x = 0; x < w; ++x) {
      double f = 0;
      for (const auto& c : centers) {
        const double d2 = (x - c[0]) * (x - c[0]) + (y - c[1]) * (y - c[1]);
        f += std::exp(-d2 / (2 * c[2] * c[2]));
      }
      r.at(x, y) = f > 0.5 ? 1 : 0;
    }
  return r;
}

std::vector<std::pair<std::string, Raster>> adversarial_rasters() {
  std::vector<std::pair<std::string, Raster>> out;
  out.emplace_back("constant", Raster(16, 16, 16, 7));
  out.emplace_back("single_pixel", Raster(1, 1, 16, 65535));
  out.emplace_back("zeros", Raster(9, 5, 16, 0));
  {
    Raster r(16, 16, 16, 0);
    for (std::uint32_t y = 0; y < 16; ++y)
      for (std::uint32_t x = 0; x < 16; ++x) r.at(x, y) = ((x + y) & 1) ? 65535 : 0;
    out.emplace_back("checkerboard_extremes", r);
  }
  {
    Raster r(8, 8, 16, 0);
    for (std::uint32_t y = 0; y < 8; ++y)
      for (std::uint32_t x = 0; x < 8; ++x) r.at(x, y) = ((x + y) & 1) ? 4096 : 0;
    out.emplace_back("checker_8x8", r);
  }
  for (const auto& [name, region] : adversarial_regions()) {
    const auto& b = region.bbox;
    Raster r(static_cast<std::uint32_t>(b.x1 + 3), static_cast<std::uint32_t>(b.y1 + 3), 16, 1000);
    std::uint16_t v = 30000;
    for (const Vertex& p : region.pixels) r.at(p.x + 1, p.y + 1) = v++ % 3 == 0 ? 65535 : 30000;
    out.emplace_back("region_" + name, r);
  }
  {
    Raster r(64, 3, 16, 0);
    for (std::uint32_t x = 0; x < 64; ++x) r.at(x, 1) = static_cast<std::uint16_t>(x * 1000);
    out.emplace_back("thin_gradient", r);
  }
  {
    Raster r(33, 17, 16, 0);
    for (std::size_t i = 0; i < r.pixels.size(); ++i) r.pixels[i] = (i % 5 == 0) ? 65535 : 0;
    out.emplace_back("stripes_extreme", r);
  }
  return out;
}

}  // namespace fixtures
