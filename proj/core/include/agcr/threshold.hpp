#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "agcr/raster.hpp"

namespace agcr {

/// Reversible rank transform that removes unused intensities.
struct PackingTransform {
  /// Strictly increasing original intensities that occur in the image.
  std::vector<std::uint16_t> distinct_values;

  std::uint32_t size() const noexcept {
    return static_cast<std::uint32_t>(distinct_values.size());
  }
  /// Packed index of an occurring value. Non-occurring values map to the
  /// index of the next larger occurring value (used for user floors).
  std::uint32_t pack(std::uint16_t value) const noexcept;
  /// Throws Error(kCorrupt) for indices >= size().
  std::uint16_t unpack(std::uint32_t packed) const;

  bool operator==(const PackingTransform&) const = default;
};

struct PackedRaster {
  Raster packed;
  PackingTransform transform;
};

PackedRaster histogram_pack(const Raster& r);

/// Inverse of histogram_pack. `bit_depth` is restored from `original_depth`.
Raster histogram_unpack(const Raster& packed, const PackingTransform& t,
                        std::uint8_t original_depth);

/// Inclusive range of packed intensities assigned to one tolerance index.
struct Bin {
  std::uint32_t lo = 0;
  std::uint32_t hi = 0;
  std::uint64_t count = 0;

  std::uint32_t span() const noexcept { return hi - lo + 1; }
  bool operator==(const Bin&) const = default;
};

struct ThresholdPlan {
  std::vector<Bin> bins;
  /// Packed floor; bins whose lower bound is below it were merged.
  std::optional<std::uint32_t> floor;
  double min_probability = 0.0;

  std::uint32_t k() const noexcept {
    return static_cast<std::uint32_t>(bins.size());
  }
  /// Tolerance index of a packed intensity. Values past the last bin clamp
  /// to the last index.
  std::uint8_t index_of(std::uint32_t packed) const noexcept;
  /// Lookup table packed value -> tolerance index for [0, n).
  std::vector<std::uint8_t> lookup(std::uint32_t n) const;

  bool operator==(const ThresholdPlan&) const = default;
};

struct BinOptions {
  /// Ranges spanning fewer than 2^min_bin_bits packed values are not split.
  std::uint32_t min_bin_bits = 2;
  /// Upper bound on the required bin probability; the requirement is
  /// min(1 - g, probability_cap).
  double probability_cap = 1.0;
  /// Forces at most this many bins when set. Adjacent bins whose original
  /// intensities lie closest are merged first, then the pair with the
  /// smallest combined count.
  std::optional<std::uint32_t> max_bins;
  /// Original intensity of each packed value, for the max_bins merge. Empty
  /// means packed values are the intensities.
  std::span<const std::uint16_t> intensities;
};

/// Recursive midpoint subdivision of the packed histogram followed by floor
/// merging and probability merging.
ThresholdPlan build_bins(std::span<const std::uint64_t> packed_hist, double gini,
                         std::optional<std::uint32_t> floor,
                         const BinOptions& options = {});

/// Merges the lowest-probability bin into its smaller neighbour.
void merge_smallest_bin(ThresholdPlan& plan);

/// Classic Otsu threshold. Returns t such that the background class is
/// {v < t}; ties resolve to the lowest t. Throws kInvalidArgument when the
/// histogram holds fewer than two distinct values.
std::uint32_t otsu_floor(std::span<const std::uint64_t> hist);

/// Separable Gaussian blur, radius ceil(3 sigma), clamp-to-edge, rounded to
/// the nearest integer. sigma == 0 returns the input.
Raster gaussian_blur(const Raster& r, double sigma);

/// Per-pixel tolerance indices.
struct ToleranceRaster {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint8_t> cells;

  ToleranceRaster() = default;
  ToleranceRaster(std::uint32_t w, std::uint32_t h, std::uint8_t fill = 0)
      : width(w), height(h), cells(static_cast<std::size_t>(w) * h, fill) {}

  std::uint8_t at(std::uint32_t x, std::uint32_t y) const noexcept {
    return cells[static_cast<std::size_t>(y) * width + x];
  }
  std::uint32_t max_label() const noexcept;
  bool operator==(const ToleranceRaster&) const = default;
};

/// Maps packed intensities through `plan`, or copies `label_template` when
/// one is given (labels must be < 256 and dimensions must match).
ToleranceRaster tolerance_raster(const Raster& packed, const ThresholdPlan& plan,
                                 const Raster* label_template = nullptr);

/// Number of 4-connected same-index components.
std::size_t count_regions(const ToleranceRaster& t);

struct AutoTuneConfig {
  BinOptions bins;
  std::optional<std::uint32_t> floor;  // packed
  double sigma_step = 5.0;
  std::uint32_t max_sigma_steps = 10;
  std::uint32_t regions_per_bin = 10;
};

struct AutoTuneResult {
  ThresholdPlan plan;
  double sigma = 0.0;
  std::size_t regions = 0;
  /// Every sigma that was evaluated, in order.
  std::vector<double> sigma_trace;
};

/// Coverage-driven bin reduction followed by the sigma search.
AutoTuneResult auto_tune(const Raster& packed, double gini,
                         const AutoTuneConfig& config = {});

}  // namespace agcr
