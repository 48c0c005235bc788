#pragma once

#include <span>
#include <vector>

#include "agcr/backend.hpp"
#include "byte_io.hpp"

namespace agcr {

/// Compressed block: codec u8, raw length u64, payload length u64, payload.
/// The smallest of `codecs` wins (default stored, bzip2, xz); ties keep the
/// earlier codec.
void write_block(ByteWriter& out, std::span<const std::uint8_t> raw, std::span<const CodecId> codecs = {});

/// Reads one block written by write_block. `max_raw` bounds the allocation.
std::vector<std::uint8_t> read_block(ByteReader& in, std::uint64_t max_raw);

}  // namespace agcr
