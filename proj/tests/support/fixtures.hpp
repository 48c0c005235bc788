#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "agcr/contour.hpp"
#include "agcr/raster.hpp"

namespace fixtures {

using agcr::GeometricContour;
using agcr::PixelRegion;
using agcr::Raster;
using agcr::Vertex;

using PixelSet = std::set<std::pair<std::int32_t, std::int32_t>>;

/// Region from ASCII art. Rows are listed top to bottom; '#' marks members.
/// The last string is y = 0.
PixelRegion region_from_art(const std::vector<std::string>& rows);

/// Largest 4-connected component of a 0/1 grid (width w, row-major, y up).
PixelRegion largest_component(const std::vector<std::uint8_t>& grid, int w, int h);

/// Random 4-connected regions inside a box of at most max_side x max_side:
/// alternates grown blobs, thresholded noise (which tends to have holes), and
/// thin random walks.
PixelRegion random_region(std::mt19937& rng, int max_side);

/// Named hard cases: spirals, combs, bridges, holes, staircases, bars.
std::vector<std::pair<std::string, PixelRegion>> adversarial_regions();

/// Staircase with `steps` steps of the given run length.
PixelRegion staircase(int steps, int run);

PixelSet pixel_set(const PixelRegion& r);
PixelSet pixel_set(const agcr::PixelMask& m);

/// Independent fill: edge pixels from a textbook Bresenham-style rounding
/// plus the PNPOLY crossing test on pixel centres, holes subtracted.
PixelSet oracle_fill(const GeometricContour& c);

/// Pixels of the integer line a-b by per-column (or per-row) exact rounding.
PixelSet oracle_line(Vertex a, Vertex b);

// Rasters ------------------------------------------------------------------

Raster random_raster(std::mt19937& rng, std::uint32_t w, std::uint32_t h);

/// Named hard rasters: constant, checkerboard, spiral, holes, bridges,
/// extreme values.
std::vector<std::pair<std::string, Raster>> adversarial_rasters();

/// Sparse-foreground 16-bit image: dark noisy background plus `blobs`
/// bright Gaussian-ish blobs covering roughly `fg_fraction` of the pixels.
Raster sparse_blob_raster(std::mt19937& rng, std::uint32_t w, std::uint32_t h, int blobs,
                          double fg_fraction);

/// High-contrast two-region image: flat-ish background and one flat-ish
/// bright disc.
Raster two_region_raster(std::mt19937& rng, std::uint32_t w, std::uint32_t h);

/// Smooth blob field thresholded into one mask at the given level.
Raster smooth_blob_field(std::mt19937& rng, std::uint32_t w, std::uint32_t h);

}  // namespace fixtures
