#pragma once

#include <cstdint>
#include <vector>

#include "agcr/geometry.hpp"
#include "agcr/threshold.hpp"

namespace agcr {

/// A 4-connected set of pixels sharing one tolerance index.
struct PixelRegion {
  /// Member pixels in raster order (y, then x).
  std::vector<Vertex> pixels;
  std::uint8_t tolerance = 0;
  BoundingBox bbox;

  std::size_t area() const noexcept { return pixels.size(); }
  PixelMask mask() const;
};

/// Counterclockwise outer ring plus hole rings. Vertices are pixel centres.
struct GeometricContour {
  std::vector<Vertex> outer;
  std::vector<std::vector<Vertex>> holes;

  std::size_t vertex_count() const noexcept;
  bool operator==(const GeometricContour&) const = default;
};

/// Iterative DFS labelling of 4-connected same-index components, returned in
/// order of their first pixel in raster order.
std::vector<PixelRegion> extract_regions(const ToleranceRaster& t);

/// Same partition as extract_regions, as a label per cell.
std::vector<std::uint32_t> label_regions(const ToleranceRaster& t, std::size_t* count = nullptr);

/// Algorithm 1. Throws kInvalidArgument for an empty region.
GeometricContour trace_contour(const PixelRegion& r);

/// Algorithm 2: per vertex, the longest forward shortcut that keeps the fill
/// identical, repeated until nothing changes. Vertex 0 of every ring is kept.
GeometricContour optimize_contour(const GeometricContour& c, const PixelRegion& r);

/// trace_contour followed by optimize_contour.
GeometricContour contour_region(const PixelRegion& r);

/// Lossy Visvalingam-Whyatt reduction to ceil(area / 100) * max_per_100px
/// vertices in total, keeping at least 3 per ring; holes are dropped, the
/// smallest first, when the budget cannot carry them.
GeometricContour reduce_contour(const GeometricContour& c, std::size_t region_pixels,
                                std::uint32_t max_per_100px);

/// Pixels on every edge and vertex of all rings.
PixelMask rasterize_edges(const GeometricContour& c);

/// Edge rasters plus even-odd interior of the outer ring, minus the fill of
/// every hole.
PixelMask fill_region(const GeometricContour& c);

/// Vertex count of the boundary traced along pixel edges with collinear
/// corners merged (the raster baseline that AGC is compared against).
std::size_t axis_aligned_vertex_count(const PixelRegion& r);

}  // namespace agcr
