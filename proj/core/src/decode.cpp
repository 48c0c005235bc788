#include "agcr/decode.hpp"

#include <algorithm>
#include <thread>

#include "agcr/error.hpp"

namespace agcr {
namespace {

std::uint8_t label_depth(std::uint32_t k) noexcept { return bits_for(k > 1 ? k - 1 : 1); }

struct Placement {
  const Container& c;
  const ToleranceRaster& t;
  Raster& out;
  std::uint32_t packed_limit;
};

std::uint16_t unpack_value(const Placement& p, std::uint64_t v, std::uint64_t at) {
  if (v >= p.packed_limit) throw CorruptError("stored sample exceeds the packed range", at);
  return p.c.identity_packing ? static_cast<std::uint16_t>(v) : p.c.packing.distinct_values[static_cast<std::size_t>(v)];
}

std::vector<std::uint16_t> lossless_samples(const Container& c, std::size_t i, std::uint32_t w, std::uint32_t h,
                                            std::size_t count) {
  const BinDescriptor& d = c.descriptors[i];
  const auto& payload = c.payloads[i];
  const std::uint64_t at = c.payload_offsets.empty() ? 0 : c.payload_offsets[i];
  switch (d.codec) {
    case CodecId::kStored:
    case CodecId::kGeneralBwt:
    case CodecId::kGeneralLz: {
      std::vector<std::uint8_t> bytes;
      try {
        bytes = decompress_bytes(d.codec, payload, d.raw_len);
      } catch (const CorruptError&) {
        throw CorruptError("bin " + std::to_string(d.label) + " payload is damaged", at);
      }
      try {
        return unpack_samples(bytes, count, d.value_bits);
      } catch (const CorruptError&) {
        throw CorruptError("bin " + std::to_string(d.label) + " sample count mismatch", at);
      }
    }
    case CodecId::kPredictiveImage: {
      if (d.layout == Layout::kRasterOrder) throw CorruptError("image codec with a raster-order layout", at);
      try {
        return jpegls_decode(payload, w, h, std::max<std::uint8_t>(d.value_bits, 1)).samples;
      } catch (const CorruptError&) {
        throw CorruptError("bin " + std::to_string(d.label) + " JPEG-LS payload is damaged", at);
      }
    }
    default:
      throw CorruptError("codec not valid for a lossless bin", at);
  }
}

template <class Fn>
void for_each_member(const ToleranceRaster& t, std::uint8_t label, const BoundingBox& box, Fn&& fn) {
  for (std::int32_t y = box.y0; y <= box.y1; ++y) {
    const std::size_t row = static_cast<std::size_t>(y) * t.width;
    for (std::int32_t x = box.x0; x <= box.x1; ++x)
      if (t.cells[row + static_cast<std::size_t>(x)] == label) fn(row + static_cast<std::size_t>(x), x, y);
  }
}

BoundingBox image_box(const ContainerHeader& h) {
  return {0, 0, static_cast<std::int32_t>(h.width) - 1, static_cast<std::int32_t>(h.height) - 1};
}

void place_descriptor(const Placement& p, std::size_t i, std::span<const std::size_t> members) {
  const Container& c = p.c;
  const BinDescriptor& d = c.descriptors[i];
  const std::uint64_t at = c.payload_offsets.empty() ? 0 : c.payload_offsets[i];
  const ContainerHeader& h = c.header;

  if (d.layout == Layout::kCrop) {
    // Every member must lie in the window.
    std::size_t inside = 0;
    for_each_member(p.t, d.label, d.bbox, [&](std::size_t, std::int32_t, std::int32_t) { ++inside; });
    if (inside != members[d.label]) throw CorruptError("crop window misses members of its bin", at);
  }

  if (d.loss == LossMode::kMean) {
    if (!c.payloads[i].empty()) throw CorruptError("mean bin carries a payload", at);
    const BoundingBox box = d.layout == Layout::kCrop ? d.bbox : image_box(h);
    for_each_member(p.t, d.label, box, [&](std::size_t idx, std::int32_t, std::int32_t) { p.out.pixels[idx] = d.mean; });
    return;
  }
  if (d.loss == LossMode::kRatio) {
    if (d.layout != Layout::kCrop) throw CorruptError("lossy bin without a crop window", at);
    ImagePlane img;
    try {
      img = j2k_decode(c.payloads[i], static_cast<std::uint32_t>(d.bbox.width()),
                       static_cast<std::uint32_t>(d.bbox.height()), h.bit_depth);
    } catch (const CorruptError&) {
      throw CorruptError("bin " + std::to_string(d.label) + " JPEG 2000 payload is damaged", at);
    }
    const auto bw = static_cast<std::size_t>(d.bbox.width());
    for_each_member(p.t, d.label, d.bbox, [&](std::size_t idx, std::int32_t x, std::int32_t y) {
      p.out.pixels[idx] = img.samples[static_cast<std::size_t>(y - d.bbox.y0) * bw + static_cast<std::size_t>(x - d.bbox.x0)];
    });
    return;
  }

  switch (d.layout) {
    case Layout::kWhole: {
      const auto s = lossless_samples(c, i, h.width, h.height, p.out.pixels.size());
      for (std::size_t k = 0; k < s.size(); ++k)
        p.out.pixels[k] = unpack_value(p, std::uint64_t{s[k]} + c.offsets[p.t.cells[k]], at);
      break;
    }
    case Layout::kRasterOrder: {
      const auto s = lossless_samples(c, i, 0, 0, members[d.label]);
      std::size_t k = 0;
      const std::uint64_t off = c.offsets[d.label];
      for_each_member(p.t, d.label, image_box(h), [&](std::size_t idx, std::int32_t, std::int32_t) {
        p.out.pixels[idx] = unpack_value(p, s[k++] + off, at);
      });
      break;
    }
    case Layout::kCrop: {
      const auto bw = static_cast<std::uint32_t>(d.bbox.width());
      const auto bh = static_cast<std::uint32_t>(d.bbox.height());
      const auto s = lossless_samples(c, i, bw, bh, std::size_t{bw} * bh);
      const std::uint64_t off = c.offsets[d.label];
      for_each_member(p.t, d.label, d.bbox, [&](std::size_t idx, std::int32_t x, std::int32_t y) {
        p.out.pixels[idx] =
            unpack_value(p, s[static_cast<std::size_t>(y - d.bbox.y0) * bw + static_cast<std::size_t>(x - d.bbox.x0)] + off, at);
      });
      break;
    }
  }
}

std::vector<std::size_t> member_counts(const ToleranceRaster& t) {
  std::vector<std::size_t> n(256, 0);
  for (auto v : t.cells) ++n[v];
  return n;
}

Placement make_placement(const Container& c, const ToleranceRaster& t, Raster& out) {
  const std::uint32_t limit = c.identity_packing ? (1u << c.header.bit_depth) : c.packing.size();
  return Placement{c, t, out, limit};
}

}  // namespace

unsigned resolve_threads(unsigned threads) noexcept {
  if (threads != 0) return threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

FillSegmentPlan FillSegmentPlan::make(std::span<const RegionRecord> records, unsigned threads) {
  FillSegmentPlan plan;
  const std::size_t n = records.size();
  if (n == 0) return plan;
  const std::size_t t = std::min<std::size_t>(std::max(1u, threads), n);
  std::uint64_t total = 0;
  for (const auto& r : records) total += bounds_of(r.contour.outer).area() + 1;
  std::uint64_t acc = 0;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += bounds_of(records[i].contour.outer).area() + 1;
    const std::size_t remaining_segments = t - plan.segments.size() - 1;
    const bool cut = remaining_segments > 0 && acc * t >= total * (plan.segments.size() + 1);
    if (cut || i + 1 == n) {
      plan.segments.emplace_back(begin, i + 1);
      begin = i + 1;
    }
  }
  return plan;
}

std::vector<PixelMask> fill_regions(std::span<const RegionRecord> records, unsigned threads) {
  std::vector<PixelMask> masks(records.size());
  const FillSegmentPlan plan = FillSegmentPlan::make(records, resolve_threads(threads));
  if (plan.segments.size() <= 1) {
    for (std::size_t i = 0; i < records.size(); ++i) masks[i] = fill_region(records[i].contour);
    return masks;
  }
  std::vector<std::exception_ptr> errors(plan.segments.size());
  {
    std::vector<std::jthread> workers;
    for (std::size_t s = 0; s < plan.segments.size(); ++s) {
      workers.emplace_back([&, s] {
        try {
          for (std::size_t i = plan.segments[s].first; i < plan.segments[s].second; ++i)
            masks[i] = fill_region(records[i].contour);
        } catch (...) {
          errors[s] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return masks;
}

void paint_masks(std::span<const PixelMask> masks, std::span<const RegionRecord> records, ToleranceRaster& out,
                 std::span<const std::uint8_t> keep) {
  for (std::size_t i = 0; i < masks.size(); ++i) {
    if (!keep.empty() && !keep[i]) continue;
    const BoundingBox& b = masks[i].box();
    if (b.empty()) continue;
    const auto bits = masks[i].raw();
    const std::size_t bw = static_cast<std::size_t>(b.width());
    const std::uint8_t tol = records[i].tolerance;
    for (std::int32_t y = std::max(b.y0, 0); y <= std::min<std::int64_t>(b.y1, std::int64_t{out.height} - 1); ++y) {
      const std::size_t src = static_cast<std::size_t>(y - b.y0) * bw;
      std::uint8_t* row = out.cells.data() + static_cast<std::size_t>(y) * out.width;
      for (std::int32_t x = std::max(b.x0, 0); x <= std::min<std::int64_t>(b.x1, std::int64_t{out.width} - 1); ++x)
        if (bits[src + static_cast<std::size_t>(x - b.x0)]) row[x] = tol;
    }
  }
}

ToleranceRaster reconstruct_tolerance(std::span<const RegionRecord> records, std::uint32_t width,
                                      std::uint32_t height, std::uint8_t background, unsigned threads) {
  ToleranceRaster t(width, height, background);
  const auto masks = fill_regions(records, threads);
  paint_masks(masks, records, t);
  return t;
}

ToleranceRaster decode_tolerance(const Container& c, unsigned threads) {
  const ContainerHeader& h = c.header;
  switch (c.tolerance_kind) {
    case ToleranceKind::kNone:
      return ToleranceRaster(h.width, h.height, h.background);
    case ToleranceKind::kShapes:
      return reconstruct_tolerance(c.regions, h.width, h.height, h.background, threads);
    case ToleranceKind::kRaster: {
      ImagePlane img;
      try {
        img = jpegls_decode(c.tolerance_payload, h.width, h.height, label_depth(h.k));
      } catch (const CorruptError& e) {
        throw CorruptError("tolerance raster is damaged", e.offset());
      }
      ToleranceRaster t(h.width, h.height);
      for (std::size_t i = 0; i < img.samples.size(); ++i) {
        if (img.samples[i] >= h.k) throw CorruptError("tolerance label exceeds k", 0);
        t.cells[i] = static_cast<std::uint8_t>(img.samples[i]);
      }
      return t;
    }
  }
  throw CorruptError("unknown tolerance section", 0);
}

Raster decode_container(const Container& c, const DecodeOptions& options) {
  const ContainerHeader& h = c.header;
  const ToleranceRaster t = decode_tolerance(c, options.threads);
  const auto members = member_counts(t);
  Raster out(h.width, h.height, h.bit_depth, 0);
  const Placement p = make_placement(c, t, out);

  if (h.strategy == Strategy::kInPlace) {
    if (c.descriptors.size() != 1 || c.descriptors[0].layout != Layout::kWhole ||
        c.descriptors[0].loss != LossMode::kLossless)
      throw CorruptError("in-place container needs exactly one whole-image payload", kHeaderSize);
    place_descriptor(p, 0, members);
  } else {
    std::vector<std::uint8_t> seen(h.k, 0);
    for (std::size_t i = 0; i < c.descriptors.size(); ++i) {
      const BinDescriptor& d = c.descriptors[i];
      const std::uint64_t at = c.payload_offsets.empty() ? 0 : c.payload_offsets[i];
      if (d.layout == Layout::kWhole) throw CorruptError("whole-image payload in a binned container", at);
      if (seen[d.label]++) throw CorruptError("duplicate bin descriptor", at);
      if (members[d.label] == 0) throw CorruptError("descriptor for an empty bin", at);
    }
    for (std::uint32_t l = 0; l < h.k; ++l)
      if (members[l] && !seen[l]) throw CorruptError("bin " + std::to_string(l) + " has no payload", kHeaderSize);
    for (std::size_t i = 0; i < c.descriptors.size(); ++i) place_descriptor(p, i, members);
  }

  if (!options.skip_checksum && crc32_of_samples(out.pixels) != h.output_crc)
    throw CorruptError("decoded image does not match the stored checksum", kHeaderSize - 8);
  return out;
}

Raster decode_container(std::span<const std::uint8_t> bytes, const DecodeOptions& options) {
  return decode_container(parse_container(bytes), options);
}

Raster extract_bin(std::span<const std::uint8_t> bytes, std::uint32_t label, unsigned threads) {
  const Container c = parse_container(bytes);
  const ContainerHeader& h = c.header;
  if (h.strategy == Strategy::kInPlace)
    throw Error(ErrorCode::kUnsupportedOperation, "in-place containers store no separable bins");
  if (label >= h.k)
    throw Error(ErrorCode::kInvalidArgument,
                "bin " + std::to_string(label) + " out of range (k = " + std::to_string(h.k) + ")");
  const ToleranceRaster t = decode_tolerance(c, threads);
  const auto members = member_counts(t);
  Raster out(h.width, h.height, h.bit_depth, 0);
  const Placement p = make_placement(c, t, out);
  for (std::size_t i = 0; i < c.descriptors.size(); ++i) {
    if (c.descriptors[i].label != label) continue;
    if (c.descriptors[i].layout == Layout::kWhole) throw CorruptError("whole-image payload in a binned container", 0);
    place_descriptor(p, i, members);
    return out;
  }
  if (members[label]) throw CorruptError("bin " + std::to_string(label) + " has no payload", kHeaderSize);
  return out;
}

}  // namespace agcr
