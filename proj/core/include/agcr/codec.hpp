#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "agcr/backend.hpp"
#include "agcr/container.hpp"
#include "agcr/raster.hpp"
#include "agcr/threshold.hpp"

namespace agcr {

struct LossSpec {
  LossMode mode = LossMode::kLossless;
  float ratio = 0.0f;

  bool operator==(const LossSpec&) const = default;
};

/// Parses "lossless", "mean" or a ratio such as "30".
LossSpec parse_loss_spec(std::string_view text);

struct EncodeConfig {
  Strategy strategy = Strategy::kAuto;
  std::optional<std::uint32_t> bins;
  std::optional<double> sigma;
  /// Floor as an original intensity.
  std::optional<std::uint16_t> floor;
  /// Vertex budget per 100 px for the lossy shape reduction; 0 disables it.
  /// Intensities stay lossless either way.
  std::uint32_t reduce = 10;
  bool slowest = false;
  bool novis = false;
  /// Label raster (values < 256) replacing the threshold plan.
  const Raster* label_template = nullptr;
  /// AGCR+ loss per template label. When non-empty every label needs an
  /// entry.
  std::map<std::uint32_t, LossSpec> loss;
  /// Mixed mode sends bins above this entropy to a general-purpose codec.
  double mixed_entropy_bits = 4.0;
  /// Otsu floor triggers.
  std::uint32_t otsu_max_range = 256;
  double otsu_min_gini = 0.95;
  unsigned threads = 0;
};

struct BinReport {
  std::uint8_t label = 0;
  std::size_t pixels = 0;
  CodecId codec = CodecId::kStored;
  Layout layout = Layout::kWhole;
  LossMode loss = LossMode::kLossless;
  std::size_t bytes = 0;
};

struct CandidateReport {
  std::string name;
  Strategy strategy = Strategy::kInPlace;
  std::size_t bytes = 0;
};

struct EncodeReport {
  ImageStats stats;
  Strategy strategy = Strategy::kInPlace;
  std::string candidate;
  std::uint32_t k = 1;
  double sigma = 0.0;
  std::uint8_t background = 0;
  std::uint16_t flags = 0;
  std::size_t regions = 0;
  std::size_t vertices = 0;
  std::size_t vertices_before_elimination = 0;
  std::size_t region_pixels = 0;
  std::size_t raw_bytes = 0;
  std::size_t bytes = 0;
  std::vector<BinReport> bins;
  std::vector<CandidateReport> candidates;
  std::vector<std::string> warnings;
};

struct EncodeResult {
  std::vector<std::uint8_t> bytes;
  EncodeReport report;
};

/// Full pipeline. Lossless configs are verified by decoding every candidate.
EncodeResult encode(const Raster& r, const EncodeConfig& config = {});

/// One bin payload plus its descriptor.
struct EncodedBin {
  BinDescriptor descriptor;
  /// Subtracted minimum.
  std::uint32_t offset = 0;
  std::vector<std::uint8_t> payload;
};

/// Member values in raster order, offset by their minimum, through a byte
/// codec.
EncodedBin encode_bin_binned(std::span<const std::uint16_t> values, CodecId codec);
std::vector<std::uint16_t> decode_bin_binned(const EncodedBin& bin, std::size_t count);

/// Bounding-box crop of `values` with non-members set to 0 and members offset
/// by their minimum, through the image codec (or a byte codec).
EncodedBin encode_bin_cropped(const Raster& values, const PixelMask& members,
                              CodecId codec = CodecId::kPredictiveImage);
/// Member values in raster order.
std::vector<std::uint16_t> decode_bin_cropped(const EncodedBin& bin, const PixelMask& members);

/// Whole raster through one codec.
EncodedBin encode_inplace(const Raster& values, CodecId codec);
Raster decode_inplace(const EncodedBin& bin, std::uint32_t width, std::uint32_t height);

struct Candidate {
  std::string name;
  Strategy strategy = Strategy::kInPlace;
  std::vector<std::uint8_t> bytes;
};

/// Smallest wins; ties prefer Mixed, then Binned, then InPlace, then the
/// earlier candidate. Throws kInvalidArgument on an empty list.
const Candidate& select_strategy(std::span<const Candidate> candidates);

}  // namespace agcr
