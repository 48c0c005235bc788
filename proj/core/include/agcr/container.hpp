#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "agcr/backend.hpp"
#include "agcr/region_store.hpp"
#include "agcr/threshold.hpp"

namespace agcr {

inline constexpr std::uint8_t kContainerVersion = 1;
/// magic + version + w + h + depth + k + strategy + flags + background +
/// sigma + reduce + output crc + header crc
inline constexpr std::size_t kHeaderSize = 4 + 1 + 4 + 4 + 1 + 2 + 1 + 2 + 1 + 4 + 2 + 4 + 4;

enum class Strategy : std::uint8_t { kInPlace = 0, kBinned = 1, kMixed = 2, kAuto = 255 };
std::string_view strategy_name(Strategy s) noexcept;

/// How a payload's samples map onto image pixels.
enum class Layout : std::uint8_t {
  kWhole = 0,        // every pixel of the image, raster order
  kRasterOrder = 1,  // members of one label, raster order
  kCrop = 2,         // bbox of one label as a 2D image, non-members padded
};

enum class LossMode : std::uint8_t { kLossless = 0, kRatio = 1, kMean = 2 };

enum class ToleranceKind : std::uint8_t { kNone = 0, kShapes = 1, kRaster = 2 };

namespace flags {
inline constexpr std::uint16_t kTemplate = 1u << 0;
inline constexpr std::uint16_t kApproximate = 1u << 1;
inline constexpr std::uint16_t kNoVis = 1u << 2;
inline constexpr std::uint16_t kPlus = 1u << 3;
inline constexpr std::uint16_t kRoiMean = 1u << 4;
inline constexpr std::uint16_t kPredictiveUnavailable = 1u << 5;
inline constexpr std::uint16_t kWaveletUnavailable = 1u << 6;
inline constexpr std::uint16_t kSlowest = 1u << 7;
inline constexpr std::uint16_t kKnown = 0xFF;
}  // namespace flags

struct ContainerHeader {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint8_t bit_depth = 16;
  /// Number of tolerance labels (1..256).
  std::uint16_t k = 1;
  Strategy strategy = Strategy::kInPlace;
  std::uint16_t flags = 0;
  std::uint8_t background = 0;
  std::uint32_t sigma_centipixels = 0;
  std::uint16_t reduce = 0;
  /// CRC-32 of the decoded samples (u16 little-endian).
  std::uint32_t output_crc = 0;

  bool operator==(const ContainerHeader&) const = default;
};

struct BinDescriptor {
  std::uint8_t label = 0;
  CodecId codec = CodecId::kStored;
  Layout layout = Layout::kRasterOrder;
  LossMode loss = LossMode::kLossless;
  /// Compression ratio (kRatio) or the stored mean intensity (kMean).
  float ratio = 0.0f;
  std::uint16_t mean = 0;
  /// Crop window for kCrop, inclusive.
  BoundingBox bbox;
  /// Bits per stored sample. Byte codecs pack <= 4 bits several to a byte and
  /// split > 8 bits into two byte planes.
  std::uint8_t value_bits = 0;
  /// Decompressed size for byte codecs, 0 for the image codecs.
  std::uint64_t raw_len = 0;

  bool operator==(const BinDescriptor&) const = default;
};

struct Container {
  ContainerHeader header;
  /// When set, samples are stored unpacked and `packing` is empty.
  bool identity_packing = false;
  PackingTransform packing;
  /// Per-label minimum packed value subtracted from stored samples.
  std::vector<std::uint32_t> offsets;
  ToleranceKind tolerance_kind = ToleranceKind::kNone;
  std::vector<RegionRecord> regions;
  /// JPEG-LS of the label raster when tolerance_kind == kRaster.
  std::vector<std::uint8_t> tolerance_payload;
  std::vector<BinDescriptor> descriptors;
  std::vector<std::vector<std::uint8_t>> payloads;
  /// Byte offset of each payload in the file (filled by parse/write).
  std::vector<std::uint64_t> payload_offsets;
};

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes) noexcept;
/// CRC-32 over the samples as u16 little-endian.
std::uint32_t crc32_of_samples(std::span<const std::uint16_t> samples) noexcept;

/// Serializes; `shape_codecs` restricts block codecs (default: smallest of
/// stored/bzip2/xz). Fills payload_offsets.
std::vector<std::uint8_t> write_container(Container& c, std::span<const CodecId> shape_codecs = {});

/// Parses and validates every section. All failures are CorruptError with
/// byte offsets; sizes are checked before any allocation.
Container parse_container(std::span<const std::uint8_t> bytes);

/// Header only (cheap), validated including its CRC.
ContainerHeader parse_header(std::span<const std::uint8_t> bytes);

}  // namespace agcr
