#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace agcr {

/// Payload codecs. Ids are stored in containers and must not change.
enum class CodecId : std::uint8_t {
  kStored = 0,           // bytes copied verbatim
  kGeneralBwt = 1,       // bzip2 stream
  kGeneralLz = 2,        // xz (LZMA2) stream
  kPredictiveImage = 3,  // JPEG-LS (ITU-T T.87) lossless codestream
  kLossyWavelet = 4,     // JPEG 2000 codestream, irreversible 9/7
};

struct BackendInfo {
  CodecId id;
  std::string_view name;
  bool lossless;
  bool image_2d;
  bool available;
};

const BackendInfo& backend_info(CodecId id);
bool is_known_codec(std::uint8_t id) noexcept;
std::string_view codec_name(CodecId id) noexcept;

/// Byte-stream codecs (stored, bzip2, xz).
std::vector<std::uint8_t> compress_bytes(CodecId id, std::span<const std::uint8_t> raw);
/// `raw_len` is the exact expected output size; mismatches are corrupt data.
std::vector<std::uint8_t> decompress_bytes(CodecId id, std::span<const std::uint8_t> payload,
                                           std::uint64_t raw_len);

/// Single-channel image for the 2D backends.
struct ImagePlane {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint8_t bit_depth = 16;
  std::vector<std::uint16_t> samples;

  bool operator==(const ImagePlane&) const = default;
};

/// JPEG-LS lossless. Depths below 2 are coded as 2 bits. Throws
/// kUnsupportedOperation for dimensions above 65535.
std::vector<std::uint8_t> jpegls_encode(const ImagePlane& img);
/// Decodes and checks the frame against the expected geometry.
ImagePlane jpegls_decode(std::span<const std::uint8_t> data, std::uint32_t width,
                         std::uint32_t height, std::uint8_t bit_depth);

/// JPEG 2000 lossy at the given compression ratio (>= 1).
std::vector<std::uint8_t> j2k_encode(const ImagePlane& img, float ratio);
ImagePlane j2k_decode(std::span<const std::uint8_t> data, std::uint32_t width,
                      std::uint32_t height, std::uint8_t bit_depth);

/// Serializes samples for the byte codecs. value_bits <= 4 packs 8/w samples
/// per byte (w = 1, 2 or 4, low bits first), <= 8 uses one byte per sample,
/// and wider values become a plane of high bytes followed by a plane of low
/// bytes.
std::vector<std::uint8_t> pack_samples(std::span<const std::uint16_t> values, std::uint8_t value_bits);
std::vector<std::uint16_t> unpack_samples(std::span<const std::uint8_t> bytes, std::size_t count,
                                          std::uint8_t value_bits);
std::size_t packed_sample_bytes(std::size_t count, std::uint8_t value_bits) noexcept;

}  // namespace agcr
