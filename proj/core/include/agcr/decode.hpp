#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "agcr/container.hpp"
#include "agcr/raster.hpp"
#include "agcr/region_store.hpp"

namespace agcr {

/// Contiguous partition of region indices into at most `threads` segments,
/// balanced by bounding-box area.
struct FillSegmentPlan {
  /// Half-open [begin, end) ranges covering [0, n).
  std::vector<std::pair<std::size_t, std::size_t>> segments;

  static FillSegmentPlan make(std::span<const RegionRecord> records, unsigned threads);
};

/// 0 means "all hardware threads".
unsigned resolve_threads(unsigned threads) noexcept;

/// Fill of every record, computed in parallel per segment.
std::vector<PixelMask> fill_regions(std::span<const RegionRecord> records, unsigned threads);

/// Paints the fills in order onto a raster initialized to `background`;
/// later records overwrite earlier ones. `keep` (optional) selects records.
void paint_masks(std::span<const PixelMask> masks, std::span<const RegionRecord> records, ToleranceRaster& out,
                 std::span<const std::uint8_t> keep = {});

ToleranceRaster reconstruct_tolerance(std::span<const RegionRecord> records, std::uint32_t width,
                                      std::uint32_t height, std::uint8_t background, unsigned threads);

struct DecodeOptions {
  unsigned threads = 0;
  /// Skip the output checksum comparison.
  bool skip_checksum = false;
};

/// Tolerance raster as stored in the container.
ToleranceRaster decode_tolerance(const Container& c, unsigned threads);

Raster decode_container(const Container& c, const DecodeOptions& options = {});
Raster decode_container(std::span<const std::uint8_t> bytes, const DecodeOptions& options = {});

/// Restores the pixels of one label and leaves every other pixel 0. Only
/// that label's payload is decompressed. Throws kUnsupportedOperation for
/// in-place containers and kInvalidArgument for labels out of range.
Raster extract_bin(std::span<const std::uint8_t> bytes, std::uint32_t label, unsigned threads = 0);

}  // namespace agcr
