#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "agcr/backend.hpp"
#include "agcr/contour.hpp"

namespace agcr {

/// One stored shape. Equality ignores the derived fields (area, bbox).
struct RegionRecord {
  GeometricContour contour;
  std::uint8_t tolerance = 0;
  /// Pixel count of the source region; 0 after deserialization.
  std::size_t area = 0;
  /// Bounds of the source pixels (encode) or of the outer ring (decode).
  BoundingBox bbox;

  bool operator==(const RegionRecord& o) const noexcept {
    return tolerance == o.tolerance && contour == o.contour;
  }
};

/// m = max(32, floor(w * h * 0.4e-5)).
std::uint32_t min_region_size(std::uint32_t width, std::uint32_t height) noexcept;

/// |d| * 2 + (d < 0).
constexpr std::uint64_t signbit_encode(std::int64_t d) noexcept {
  return d < 0 ? (static_cast<std::uint64_t>(-(d + 1)) + 1) * 2 + 1 : static_cast<std::uint64_t>(d) * 2;
}
constexpr std::int64_t signbit_decode(std::uint64_t u) noexcept {
  const auto mag = static_cast<std::int64_t>(u >> 1);
  return (u & 1) ? -mag : mag;
}

/// Relabels every 4-connected region smaller than `min_area` to the index of
/// the neighbour it shares the longest border with, preferring neighbours
/// that are themselves large enough. Returns the number of relabelled pixels.
std::size_t absorb_small_regions(ToleranceRaster& t, std::size_t min_area);

/// Descending area, ties by bbox (min y, min x).
void sort_regions(std::vector<RegionRecord>& records);

struct StoreOptions {
  /// Tolerance index the decoder initializes the raster with.
  std::uint8_t background = 0;
  bool eliminate_background = true;
  /// Relabel sub-m regions before contouring.
  bool absorb_small = true;
  /// 0 disables the lossy vertex reduction.
  std::uint32_t reduce_per_100px = 0;
  unsigned threads = 1;
};

struct RegionSet {
  std::vector<RegionRecord> records;
  /// What the decoder reconstructs from `records`; every later stage bins
  /// intensities by this raster.
  ToleranceRaster decoded;
  std::size_t absorbed_pixels = 0;
  std::size_t eliminated = 0;
  std::size_t elided_holes = 0;
  /// Vertex totals before and after background elimination.
  std::size_t vertices_before = 0;
  std::size_t vertices_after = 0;
};

/// Full region pipeline: absorb, contour, (reduce), sort, hole elision and
/// background elimination with decode-compare.
RegionSet build_region_set(const ToleranceRaster& t, const StoreOptions& options);

/// Background elimination alone, on sorted records. Returns the kept records;
/// painting them on `background` equals painting all of `records` on it.
std::vector<RegionRecord> eliminate_background(const std::vector<RegionRecord>& records, std::uint32_t width,
                                               std::uint32_t height, std::uint8_t background, unsigned threads,
                                               std::size_t* removed = nullptr);

/// Shape stream: region count and ring sizes, tolerances, x values, y values,
/// each as a separately compressed varint block.
struct ShapeStreamStats {
  std::size_t stored_vertices = 0;
  std::size_t dictionary_hits = 0;
  std::size_t bytes = 0;
};

/// `codecs` restricts the per-block choice; the smallest result is kept.
std::vector<std::uint8_t> serialize_regions(std::span<const RegionRecord> records,
                                            std::span<const CodecId> codecs = {},
                                            ShapeStreamStats* stats = nullptr);

/// Validates every vertex against the image bounds.
std::vector<RegionRecord> deserialize_regions(std::span<const std::uint8_t> bytes, std::uint32_t width,
                                              std::uint32_t height, std::uint64_t base_offset = 0);

}  // namespace agcr
