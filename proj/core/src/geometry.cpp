#include "agcr/geometry.hpp"

namespace agcr {

BoundingBox bounds_of(std::span<const Vertex> points) noexcept {
  BoundingBox b;
  for (const Vertex& v : points) b.expand(v);
  return b;
}

std::size_t PixelMask::count() const noexcept {
  std::size_t n = 0;
  for (std::uint8_t b : bits_) n += b != 0;
  return n;
}

std::vector<Vertex> PixelMask::pixels() const {
  std::vector<Vertex> out;
  if (box_.empty()) return out;
  std::size_t i = 0;
  for (std::int32_t y = box_.y0; y <= box_.y1; ++y)
    for (std::int32_t x = box_.x0; x <= box_.x1; ++x, ++i)
      if (bits_[i]) out.push_back({x, y});
  return out;
}

bool PixelMask::same_pixels(const PixelMask& other) const {
  if (box_ == other.box_) return bits_ == other.bits_;
  return pixels() == other.pixels();
}

std::vector<Vertex> rasterize_segment(Vertex a, Vertex b) {
  std::vector<Vertex> out;
  for_each_segment_pixel(a, b, [&](Vertex v) { out.push_back(v); });
  return out;
}

PixelMask fill_ring(std::span<const Vertex> ring, const BoundingBox& window) {
  PixelMask mask(window);
  if (ring.empty() || window.empty()) return mask;
  const std::size_t n = ring.size();

  for (std::size_t i = 0; i < n; ++i) {
    for_each_segment_pixel(ring[i], ring[(i + 1) % n], [&](Vertex v) {
      if (window.contains(v)) mask.set(v);
    });
  }
  if (n < 3) return mask;

  // Bucket edges by the rows they cross so each scanline only sees its own.
  const BoundingBox rb = bounds_of(ring);
  const std::int32_t y_lo = std::max(window.y0, rb.y0);
  const std::int32_t y_hi = std::min(window.y1, rb.y1);
  if (y_lo > y_hi) return mask;
  std::vector<std::vector<std::uint32_t>> rows(static_cast<std::size_t>(y_hi - y_lo + 1));
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex a = ring[i];
    const Vertex b = ring[(i + 1) % n];
    if (a.y == b.y) continue;
    const std::int32_t lo = std::max(std::min(a.y, b.y), y_lo);
    const std::int32_t hi = std::min(std::max(a.y, b.y) - 1, y_hi);
    for (std::int32_t y = lo; y <= hi; ++y) rows[y - y_lo].push_back(static_cast<std::uint32_t>(i));
  }

  std::vector<std::int64_t> xs;
  for (std::int32_t y = y_lo; y <= y_hi; ++y) {
    xs.clear();
    for (std::uint32_t i : rows[y - y_lo]) append_crossing(ring[i], ring[(i + 1) % n], y, xs);
    std::sort(xs.begin(), xs.end());
    // Pixels in [xs[2j], xs[2j+1]) are inside.
    for (std::size_t j = 0; j + 1 < xs.size(); j += 2) {
      const std::int64_t from = std::max<std::int64_t>(xs[j], window.x0);
      const std::int64_t to = std::min<std::int64_t>(xs[j + 1] - 1, window.x1);
      for (std::int64_t x = from; x <= to; ++x) mask.set({static_cast<std::int32_t>(x), y});
    }
  }
  return mask;
}

PixelMask fill_ring(std::span<const Vertex> ring) { return fill_ring(ring, bounds_of(ring)); }

}  // namespace agcr
