#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

namespace agcr {

/// Single-channel image, row-major, at most 16 bits per sample.
///
/// Row 0 is the bottom row of the image for all geometry in this library
/// (y grows upward), which keeps "bottom-left" and "counterclockwise" in
/// their usual mathematical sense.
struct Raster {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint8_t bit_depth = 16;
  std::vector<std::uint16_t> pixels;

  Raster() = default;
  Raster(std::uint32_t w, std::uint32_t h, std::uint8_t depth = 16,
         std::uint16_t fill = 0)
      : width(w), height(h), bit_depth(depth),
        pixels(static_cast<std::size_t>(w) * h, fill) {}

  std::size_t size() const noexcept { return pixels.size(); }
  std::size_t index(std::uint32_t x, std::uint32_t y) const noexcept {
    return static_cast<std::size_t>(y) * width + x;
  }
  std::uint16_t at(std::uint32_t x, std::uint32_t y) const noexcept {
    return pixels[index(x, y)];
  }
  std::uint16_t& at(std::uint32_t x, std::uint32_t y) noexcept {
    return pixels[index(x, y)];
  }

  /// Throws kInvalidArgument when dimensions, sample count, or a sample value
  /// violate the raster invariants.
  void validate() const;

  bool operator==(const Raster&) const = default;
};

/// Smallest bit depth (1..16) that holds `max_value`.
std::uint8_t bits_for(std::uint32_t max_value) noexcept;

struct ImageStats {
  double gini = 0.0;
  double shannon_entropy = 0.0;
  double std_dev = 0.0;
  /// std_dev / (max - min); 0 for constant images.
  double normalized_std_dev = 0.0;
  std::pair<std::uint16_t, std::uint16_t> dynamic_range{0, 0};
  double background_fraction = 0.0;
  std::uint32_t distinct_values = 0;
};

/// Dense histogram over [0, 2^bit_depth).
std::vector<std::uint64_t> histogram(const Raster& r);

/// Population Gini coefficient sum|xi - xj| / (2 n^2 mean) of a histogram,
/// evaluated with the sorted-values identity. Defined as 0 when every value
/// is zero.
double gini_coefficient(std::span<const std::uint64_t> hist);

/// Shannon entropy in bits/symbol.
double shannon_entropy(std::span<const std::uint64_t> hist);

ImageStats compute_stats(const Raster& r);

/// Loads a single-channel 8/16-bit TIFF or an `AGRW` raw fixture; the format
/// is sniffed from the file's magic bytes.
Raster load_raster(const std::filesystem::path& path);

/// Writes TIFF unless the extension is `.agrw` or `.raw`.
void save_raster(const Raster& r, const std::filesystem::path& path);

// In-memory codecs for the raw fixture format, shared with the file functions.
std::vector<std::uint8_t> encode_raw(const Raster& r);
Raster decode_raw(std::span<const std::uint8_t> bytes);

}  // namespace agcr
