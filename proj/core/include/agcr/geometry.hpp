#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace agcr {

/// A pixel position. Vertices of every contour are pixel centres.
struct Vertex {
  std::int32_t x = 0;
  std::int32_t y = 0;

  friend constexpr auto operator<=>(const Vertex&, const Vertex&) = default;
  constexpr Vertex operator+(Vertex o) const noexcept { return {x + o.x, y + o.y}; }
  constexpr Vertex operator-(Vertex o) const noexcept { return {x - o.x, y - o.y}; }
  constexpr Vertex operator*(std::int32_t s) const noexcept { return {x * s, y * s}; }
};

/// Inclusive pixel rectangle. Default-constructed boxes are empty.
struct BoundingBox {
  std::int32_t x0 = std::numeric_limits<std::int32_t>::max();
  std::int32_t y0 = std::numeric_limits<std::int32_t>::max();
  std::int32_t x1 = std::numeric_limits<std::int32_t>::min();
  std::int32_t y1 = std::numeric_limits<std::int32_t>::min();

  bool empty() const noexcept { return x1 < x0 || y1 < y0; }
  std::int32_t width() const noexcept { return empty() ? 0 : x1 - x0 + 1; }
  std::int32_t height() const noexcept { return empty() ? 0 : y1 - y0 + 1; }
  std::size_t area() const noexcept {
    return static_cast<std::size_t>(width()) * static_cast<std::size_t>(height());
  }
  void expand(Vertex v) noexcept {
    x0 = std::min(x0, v.x);
    y0 = std::min(y0, v.y);
    x1 = std::max(x1, v.x);
    y1 = std::max(y1, v.y);
  }
  void expand(const BoundingBox& b) noexcept {
    if (b.empty()) return;
    expand(Vertex{b.x0, b.y0});
    expand(Vertex{b.x1, b.y1});
  }
  bool contains(Vertex v) const noexcept {
    return v.x >= x0 && v.x <= x1 && v.y >= y0 && v.y <= y1;
  }
  BoundingBox padded(std::int32_t n) const noexcept { return {x0 - n, y0 - n, x1 + n, y1 + n}; }
  Vertex corner() const noexcept { return {x0, y0}; }

  bool operator==(const BoundingBox&) const = default;
};

BoundingBox bounds_of(std::span<const Vertex> points) noexcept;

/// Dense bitmap over a bounding box. Queries outside the box read as unset.
class PixelMask {
 public:
  PixelMask() = default;
  explicit PixelMask(const BoundingBox& box)
      : box_(box), bits_(box.area(), 0) {}

  const BoundingBox& box() const noexcept { return box_; }

  bool test(Vertex v) const noexcept { return box_.contains(v) && bits_[offset(v)] != 0; }
  bool test(std::int32_t x, std::int32_t y) const noexcept { return test(Vertex{x, y}); }
  /// Caller guarantees v lies inside the box.
  void set(Vertex v, bool on = true) noexcept { bits_[offset(v)] = on ? 1 : 0; }

  std::size_t count() const noexcept;
  std::vector<Vertex> pixels() const;

  /// Pixel-set equality, independent of the boxes' extents.
  bool same_pixels(const PixelMask& other) const;

  std::span<const std::uint8_t> raw() const noexcept { return bits_; }
  std::span<std::uint8_t> raw() noexcept { return bits_; }

 private:
  std::size_t offset(Vertex v) const noexcept {
    return static_cast<std::size_t>(v.y - box_.y0) * static_cast<std::size_t>(box_.width()) +
           static_cast<std::size_t>(v.x - box_.x0);
  }

  BoundingBox box_{};
  std::vector<std::uint8_t> bits_;
};

namespace detail {

/// floor(num / den) for den > 0.
constexpr std::int64_t floor_div(std::int64_t num, std::int64_t den) noexcept {
  const std::int64_t q = num / den;
  return (num % den != 0 && (num < 0)) ? q - 1 : q;
}

}  // namespace detail

/// Visits the pixels of the integer line a-b. The walk runs along the major
/// axis and rounds the minor coordinate half-up, always from the canonical
/// (smaller) endpoint, so the pixel set of a->b equals that of b->a. Every
/// lattice point lying exactly on the segment is visited.
template <typename Fn>
void for_each_segment_pixel(Vertex a, Vertex b, Fn&& fn) {
  const std::int64_t adx = std::llabs(static_cast<std::int64_t>(b.x) - a.x);
  const std::int64_t ady = std::llabs(static_cast<std::int64_t>(b.y) - a.y);
  if (adx >= ady) {
    if (b < a) std::swap(a, b);
    const std::int64_t dx = static_cast<std::int64_t>(b.x) - a.x;
    const std::int64_t dy = static_cast<std::int64_t>(b.y) - a.y;
    if (dx == 0) {
      fn(a);
      return;
    }
    for (std::int64_t t = 0; t <= dx; ++t) {
      const std::int64_t y = a.y + detail::floor_div(2 * t * dy + dx, 2 * dx);
      fn(Vertex{static_cast<std::int32_t>(a.x + t), static_cast<std::int32_t>(y)});
    }
  } else {
    if (std::pair(b.y, b.x) < std::pair(a.y, a.x)) std::swap(a, b);
    const std::int64_t dx = static_cast<std::int64_t>(b.x) - a.x;
    const std::int64_t dy = static_cast<std::int64_t>(b.y) - a.y;
    for (std::int64_t t = 0; t <= dy; ++t) {
      const std::int64_t x = a.x + detail::floor_div(2 * t * dx + dy, 2 * dy);
      fn(Vertex{static_cast<std::int32_t>(x), static_cast<std::int32_t>(a.y + t)});
    }
  }
}

std::vector<Vertex> rasterize_segment(Vertex a, Vertex b);

/// Appends, for scanline `y`, the smallest pixel x that lies strictly right of
/// the crossing of edge a-b. Edges count for rows in [min y, max y) so each
/// vertex is crossed by exactly one of its two incident edges.
inline void append_crossing(Vertex a, Vertex b, std::int32_t y, std::vector<std::int64_t>& out) {
  if (a.y == b.y) return;
  if (b.y < a.y) std::swap(a, b);
  if (y < a.y || y >= b.y) return;
  const std::int64_t dy = static_cast<std::int64_t>(b.y) - a.y;
  const std::int64_t num = static_cast<std::int64_t>(a.x) * dy +
                           static_cast<std::int64_t>(y - a.y) * (static_cast<std::int64_t>(b.x) - a.x);
  out.push_back(detail::floor_div(num, dy) + 1);
}

/// Fill of one closed ring restricted to `window`: the union of its edge
/// rasters and every pixel whose centre is inside by the even-odd rule.
PixelMask fill_ring(std::span<const Vertex> ring, const BoundingBox& window);
PixelMask fill_ring(std::span<const Vertex> ring);

}  // namespace agcr
