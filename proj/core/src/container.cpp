#include "agcr/container.hpp"

#include <cmath>
#include <cstring>

#include <zlib.h>

#include "block_io.hpp"
#include "byte_io.hpp"

namespace agcr {
namespace {

constexpr char kMagic[4] = {'A', 'G', 'C', 'R'};
constexpr std::uint64_t kMaxPixels = 1ull << 31;

std::uint64_t pixel_count(const ContainerHeader& h) { return std::uint64_t{h.width} * h.height; }

void write_header(ByteWriter& w, const ContainerHeader& h) {
  w.bytes({reinterpret_cast<const std::uint8_t*>(kMagic), 4});
  w.u8(kContainerVersion);
  w.u32(h.width);
  w.u32(h.height);
  w.u8(h.bit_depth);
  w.u16(h.k);
  w.u8(static_cast<std::uint8_t>(h.strategy));
  w.u16(h.flags);
  w.u8(h.background);
  w.u32(h.sigma_centipixels);
  w.u16(h.reduce);
  w.u32(h.output_crc);
  w.u32(crc32_of(w.buffer()));
}

std::vector<std::uint8_t> tables_raw(const Container& c) {
  ByteWriter w;
  w.u8(c.identity_packing ? 0 : 1);
  if (!c.identity_packing) {
    const auto& v = c.packing.distinct_values;
    w.varint(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w.varint(i == 0 ? v[0] : v[i] - v[i - 1] - 1);
  }
  for (auto o : c.offsets) w.varint(o);
  return w.take();
}

void parse_tables(std::span<const std::uint8_t> raw, std::uint64_t base, Container& c) {
  ByteReader r(raw, base);
  const std::uint8_t mode = r.u8();
  const std::uint32_t value_limit = 1u << c.header.bit_depth;
  std::uint32_t packed_limit = value_limit;
  if (mode == 0) {
    c.identity_packing = true;
  } else if (mode == 1) {
    const std::uint64_t n = r.varint();
    if (n == 0 || n > value_limit || n > pixel_count(c.header)) r.fail("packing table size is out of range");
    c.packing.distinct_values.resize(static_cast<std::size_t>(n));
    std::uint64_t v = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      const std::uint64_t d = r.varint();
      v = i == 0 ? d : v + d + 1;
      if (v >= value_limit) r.fail("packing table value exceeds the bit depth");
      c.packing.distinct_values[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(v);
    }
    packed_limit = static_cast<std::uint32_t>(n);
  } else {
    r.fail("unknown packing mode");
  }
  c.offsets.resize(c.header.k);
  for (auto& o : c.offsets) {
    const std::uint64_t v = r.varint();
    if (v >= packed_limit) r.fail("label offset exceeds the packed range");
    o = static_cast<std::uint32_t>(v);
  }
  if (!r.done()) r.fail("trailing bytes in table block");
}

std::uint32_t descriptor_param(const BinDescriptor& d) {
  if (d.loss == LossMode::kMean) return d.mean;
  std::uint32_t bits = 0;
  std::memcpy(&bits, &d.ratio, sizeof bits);
  return bits;
}

}  // namespace

std::string_view strategy_name(Strategy s) noexcept {
  switch (s) {
    case Strategy::kInPlace: return "inplace";
    case Strategy::kBinned: return "binned";
    case Strategy::kMixed: return "mixed";
    case Strategy::kAuto: return "auto";
  }
  return "unknown";
}

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes) noexcept {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large buffers in pieces.
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    const std::size_t n = std::min<std::size_t>(bytes.size() - pos, 1u << 30);
    crc = crc32(crc, bytes.data() + pos, static_cast<uInt>(n));
    pos += n;
  }
  return static_cast<std::uint32_t>(crc);
}

std::uint32_t crc32_of_samples(std::span<const std::uint16_t> samples) noexcept {
  uLong crc = crc32(0L, Z_NULL, 0);
  std::uint8_t buf[8192];
  std::size_t fill = 0;
  for (std::uint16_t s : samples) {
    buf[fill++] = static_cast<std::uint8_t>(s);
    buf[fill++] = static_cast<std::uint8_t>(s >> 8);
    if (fill == sizeof buf) {
      crc = crc32(crc, buf, static_cast<uInt>(fill));
      fill = 0;
    }
  }
  if (fill) crc = crc32(crc, buf, static_cast<uInt>(fill));
  return static_cast<std::uint32_t>(crc);
}

std::vector<std::uint8_t> write_container(Container& c, std::span<const CodecId> shape_codecs) {
  if (c.descriptors.size() != c.payloads.size())
    throw Error(ErrorCode::kInternal, "descriptor and payload counts differ");
  if (c.offsets.size() != c.header.k) throw Error(ErrorCode::kInternal, "offset table does not match k");
  ByteWriter w;
  write_header(w, c.header);
  write_block(w, tables_raw(c));

  w.u8(static_cast<std::uint8_t>(c.tolerance_kind));
  if (c.tolerance_kind == ToleranceKind::kShapes) {
    const auto shapes = serialize_regions(c.regions, shape_codecs);
    w.u64(shapes.size());
    w.bytes(shapes);
  } else if (c.tolerance_kind == ToleranceKind::kRaster) {
    w.u64(c.tolerance_payload.size());
    w.bytes(c.tolerance_payload);
  }

  w.u16(static_cast<std::uint16_t>(c.descriptors.size()));
  for (std::size_t i = 0; i < c.descriptors.size(); ++i) {
    const auto& d = c.descriptors[i];
    w.u8(d.label);
    w.u8(static_cast<std::uint8_t>(d.codec));
    w.u8(static_cast<std::uint8_t>(d.layout));
    w.u8(static_cast<std::uint8_t>(d.loss));
    w.u32(descriptor_param(d));
    const bool crop = d.layout == Layout::kCrop;
    w.u32(crop ? static_cast<std::uint32_t>(d.bbox.x0) : 0);
    w.u32(crop ? static_cast<std::uint32_t>(d.bbox.y0) : 0);
    w.u32(crop ? static_cast<std::uint32_t>(d.bbox.width()) : 0);
    w.u32(crop ? static_cast<std::uint32_t>(d.bbox.height()) : 0);
    w.u8(d.value_bits);
    w.u64(d.raw_len);
    w.u64(c.payloads[i].size());
  }
  c.payload_offsets.clear();
  for (const auto& p : c.payloads) {
    c.payload_offsets.push_back(w.size());
    w.bytes(p);
  }
  return w.take();
}

ContainerHeader parse_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) throw CorruptError("file is shorter than the container header", bytes.size());
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) throw CorruptError("bad magic, not an AGCR container", 0);
  ByteReader r(bytes.first(kHeaderSize));
  r.bytes(4);
  const std::uint8_t version = r.u8();
  if (version != kContainerVersion)
    throw CorruptError("unsupported container version " + std::to_string(version), 4);
  ContainerHeader h;
  h.width = r.u32();
  h.height = r.u32();
  h.bit_depth = r.u8();
  h.k = r.u16();
  const std::uint8_t strategy = r.u8();
  h.flags = r.u16();
  h.background = r.u8();
  h.sigma_centipixels = r.u32();
  h.reduce = r.u16();
  h.output_crc = r.u32();
  const std::uint32_t stored_crc = r.u32();
  if (crc32_of(bytes.first(kHeaderSize - 4)) != stored_crc)
    throw CorruptError("header checksum mismatch", kHeaderSize - 4);
  if (h.width == 0 || h.height == 0 || pixel_count(h) > kMaxPixels)
    throw CorruptError("image dimensions out of range", 5);
  if (h.bit_depth < 1 || h.bit_depth > 16) throw CorruptError("bit depth out of range", 13);
  if (h.k < 1 || h.k > 256) throw CorruptError("label count out of range", 14);
  if (strategy > static_cast<std::uint8_t>(Strategy::kMixed)) throw CorruptError("unknown strategy", 16);
  h.strategy = static_cast<Strategy>(strategy);
  if (h.flags & ~flags::kKnown) throw CorruptError("unknown header flags", 17);
  if (h.background >= h.k) throw CorruptError("background label out of range", 19);
  return h;
}

Container parse_container(std::span<const std::uint8_t> bytes) {
  Container c;
  c.header = parse_header(bytes);
  const ContainerHeader& h = c.header;
  const std::uint64_t pixels = pixel_count(h);
  ByteReader r(bytes.subspan(kHeaderSize), kHeaderSize);

  const std::uint64_t tables_at = r.offset();
  const auto tables = read_block(r, (std::uint64_t{1} << h.bit_depth) * 3 + std::uint64_t{h.k} * 5 + 16);
  parse_tables(tables, tables_at, c);

  const std::uint64_t kind_at = r.offset();
  const std::uint8_t kind = r.u8();
  if (kind > static_cast<std::uint8_t>(ToleranceKind::kRaster)) throw CorruptError("unknown tolerance section", kind_at);
  c.tolerance_kind = static_cast<ToleranceKind>(kind);
  if (c.tolerance_kind != ToleranceKind::kNone) {
    const std::uint64_t len = r.u64();
    if (len > r.remaining()) throw CorruptError("tolerance section is truncated", kind_at + 1);
    const std::uint64_t at = r.offset();
    const auto section = r.bytes(len);
    if (c.tolerance_kind == ToleranceKind::kShapes) {
      c.regions = deserialize_regions(section, h.width, h.height, at);
      for (const auto& rec : c.regions)
        if (rec.tolerance >= h.k) throw CorruptError("region label exceeds k", at);
    } else {
      c.tolerance_payload.assign(section.begin(), section.end());
    }
  }

  const std::uint64_t count_at = r.offset();
  const std::uint16_t count = r.u16();
  if (count > std::uint32_t{h.k} + 1) throw CorruptError("too many bin descriptors", count_at);
  std::uint64_t total_payload = 0;
  std::vector<std::uint64_t> lengths;
  for (std::uint16_t i = 0; i < count; ++i) {
    const std::uint64_t at = r.offset();
    BinDescriptor d;
    d.label = r.u8();
    const std::uint8_t codec = r.u8();
    const std::uint8_t layout = r.u8();
    const std::uint8_t loss = r.u8();
    const std::uint32_t param = r.u32();
    const std::uint32_t x0 = r.u32(), y0 = r.u32(), bw = r.u32(), bh = r.u32();
    d.value_bits = r.u8();
    d.raw_len = r.u64();
    const std::uint64_t payload_len = r.u64();
    if (d.label >= h.k) throw CorruptError("descriptor label exceeds k", at);
    if (!is_known_codec(codec)) throw CorruptError("unknown codec id " + std::to_string(codec), at + 1);
    if (layout > static_cast<std::uint8_t>(Layout::kCrop)) throw CorruptError("unknown payload layout", at + 2);
    if (loss > static_cast<std::uint8_t>(LossMode::kMean)) throw CorruptError("unknown loss mode", at + 3);
    d.codec = static_cast<CodecId>(codec);
    d.layout = static_cast<Layout>(layout);
    d.loss = static_cast<LossMode>(loss);
    if (d.loss == LossMode::kMean) {
      if (param >= (1u << h.bit_depth)) throw CorruptError("mean exceeds the bit depth", at + 4);
      d.mean = static_cast<std::uint16_t>(param);
    } else if (d.loss == LossMode::kRatio) {
      std::memcpy(&d.ratio, &param, sizeof d.ratio);
      if (!std::isfinite(d.ratio) || d.ratio < 1.0f) throw CorruptError("lossy ratio out of range", at + 4);
    }
    std::uint64_t area = pixels;
    if (d.layout == Layout::kCrop) {
      if (bw == 0 || bh == 0 || std::uint64_t{x0} + bw > h.width || std::uint64_t{y0} + bh > h.height)
        throw CorruptError("crop window outside the image", at + 8);
      d.bbox = {static_cast<std::int32_t>(x0), static_cast<std::int32_t>(y0), static_cast<std::int32_t>(x0 + bw - 1),
                static_cast<std::int32_t>(y0 + bh - 1)};
      area = std::uint64_t{bw} * bh;
    }
    if (d.value_bits > 16) throw CorruptError("sample width out of range", at + 24);
    const bool byte_codec = d.codec == CodecId::kStored || d.codec == CodecId::kGeneralBwt ||
                            d.codec == CodecId::kGeneralLz;
    if (byte_codec ? d.raw_len > 2 * area : d.raw_len != 0) throw CorruptError("payload raw length out of range", at + 25);
    if (d.loss == LossMode::kRatio && d.codec != CodecId::kLossyWavelet)
      throw CorruptError("lossy ratio needs the wavelet codec", at + 1);
    if (d.codec == CodecId::kLossyWavelet && d.loss != LossMode::kRatio)
      throw CorruptError("wavelet codec used for a lossless bin", at + 1);
    if (payload_len > r.remaining()) throw CorruptError("payload length exceeds the file", at + 33);
    total_payload += payload_len;
    lengths.push_back(payload_len);
    c.descriptors.push_back(d);
  }
  if (total_payload != r.remaining()) throw CorruptError("payload lengths do not match the file size", r.offset());
  for (auto len : lengths) {
    c.payload_offsets.push_back(r.offset());
    const auto p = r.bytes(len);
    c.payloads.emplace_back(p.begin(), p.end());
  }
  return c;
}

}  // namespace agcr
