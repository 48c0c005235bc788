#include "block_io.hpp"

namespace agcr {

void write_block(ByteWriter& out, std::span<const std::uint8_t> raw, std::span<const CodecId> codecs) {
  static constexpr CodecId kDefault[] = {CodecId::kStored, CodecId::kGeneralBwt, CodecId::kGeneralLz};
  if (codecs.empty()) codecs = kDefault;
  CodecId best_id = CodecId::kStored;
  std::vector<std::uint8_t> best;
  bool have = false;
  for (CodecId id : codecs) {
    if (raw.empty() && id != CodecId::kStored) continue;
    auto payload = compress_bytes(id, raw);
    if (!have || payload.size() < best.size()) {
      best = std::move(payload);
      best_id = id;
      have = true;
    }
  }
  if (!have) best.clear();
  out.u8(static_cast<std::uint8_t>(best_id));
  out.u64(raw.size());
  out.u64(best.size());
  out.bytes(best);
}

std::vector<std::uint8_t> read_block(ByteReader& in, std::uint64_t max_raw) {
  const std::uint64_t at = in.offset();
  const std::uint8_t id = in.u8();
  if (id > static_cast<std::uint8_t>(CodecId::kGeneralLz)) throw CorruptError("block codec id is not a byte codec", at);
  const std::uint64_t raw_len = in.u64();
  if (raw_len > max_raw) throw CorruptError("block length exceeds the image bound", at + 1);
  const std::uint64_t payload_len = in.u64();
  if (payload_len > in.remaining()) throw CorruptError("block payload is truncated", at + 9);
  const std::uint64_t payload_at = in.offset();
  const auto payload = in.bytes(payload_len);
  try {
    return decompress_bytes(static_cast<CodecId>(id), payload, raw_len);
  } catch (const CorruptError&) {
    throw CorruptError(std::string(codec_name(static_cast<CodecId>(id))) + " block payload is damaged", payload_at);
  }
}

}  // namespace agcr
