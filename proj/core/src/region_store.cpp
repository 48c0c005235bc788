#include "agcr/region_store.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>
#include <unordered_map>

#include "agcr/decode.hpp"
#include "agcr/error.hpp"
#include "block_io.hpp"
#include "byte_io.hpp"

namespace agcr {
namespace {

constexpr std::uint32_t kNone = 0xFFFFFFFFu;

// Runs fn(i) for i in [0, n) on up to `threads` workers; results must be
// written to per-index slots so the outcome does not depend on scheduling.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  const unsigned t = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), n));
  if (t <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(t);
  {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < t; ++w)
      workers.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < n; i = next++) fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
          next = n;
        }
      });
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// Pixel owner: index of the last record whose fill covers it.
std::vector<std::uint32_t> owners(std::span<const PixelMask> masks, std::uint32_t w, std::uint32_t h) {
  std::vector<std::uint32_t> own(std::size_t{w} * h, kNone);
  for (std::size_t i = 0; i < masks.size(); ++i) {
    const BoundingBox& b = masks[i].box();
    if (b.empty()) continue;
    const auto bits = masks[i].raw();
    const auto bw = static_cast<std::size_t>(b.width());
    for (std::int32_t y = std::max(b.y0, 0); y <= std::min<std::int64_t>(b.y1, std::int64_t{h} - 1); ++y)
      for (std::int32_t x = std::max(b.x0, 0); x <= std::min<std::int64_t>(b.x1, std::int64_t{w} - 1); ++x)
        if (bits[static_cast<std::size_t>(y - b.y0) * bw + static_cast<std::size_t>(x - b.x0)])
          own[static_cast<std::size_t>(y) * w + static_cast<std::size_t>(x)] = static_cast<std::uint32_t>(i);
  }
  return own;
}

struct LocalRing {
  Vertex corner;
  std::vector<Vertex> offsets;
};

LocalRing localize(const std::vector<Vertex>& ring) {
  const BoundingBox b = bounds_of(ring);
  LocalRing out{b.corner(), {}};
  out.offsets.reserve(ring.size());
  for (const Vertex& v : ring) out.offsets.push_back(v - out.corner);
  return out;
}

}  // namespace

std::uint32_t min_region_size(std::uint32_t width, std::uint32_t height) noexcept {
  const double scaled = static_cast<double>(width) * static_cast<double>(height) * 0.4e-5;
  return std::max<std::uint32_t>(32, static_cast<std::uint32_t>(scaled));
}

std::size_t absorb_small_regions(ToleranceRaster& t, std::size_t min_area) {
  std::size_t relabelled = 0;
  const std::uint32_t w = t.width, h = t.height;
  for (int pass = 0; pass < 32; ++pass) {
    std::size_t n = 0;
    const auto labels = label_regions(t, &n);
    if (n <= 1) break;
    std::vector<std::size_t> area(n, 0);
    std::vector<std::uint8_t> tol(n, 0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      ++area[labels[i]];
      tol[labels[i]] = t.cells[i];
    }
    // Border contact of every small region with each neighbouring region.
    std::unordered_map<std::uint32_t, std::map<std::uint32_t, std::size_t>> contact;
    for (std::uint32_t y = 0; y < h; ++y)
      for (std::uint32_t x = 0; x < w; ++x) {
        const std::size_t i = std::size_t{y} * w + x;
        const std::uint32_t a = labels[i];
        if (area[a] >= min_area) continue;
        auto touch = [&](std::size_t j) {
          if (labels[j] != a) ++contact[a][labels[j]];
        };
        if (x > 0) touch(i - 1);
        if (x + 1 < w) touch(i + 1);
        if (y > 0) touch(i - w);
        if (y + 1 < h) touch(i + w);
      }
    if (contact.empty()) break;
    std::vector<std::uint32_t> target(n, kNone);
    bool any = false;
    for (const auto& [a, nbrs] : contact) {
      std::uint32_t best = kNone;
      std::size_t best_len = 0;
      // Large neighbours first.
      for (const auto& [b, len] : nbrs)
        if (area[b] >= min_area && len > best_len) best = b, best_len = len;
      if (best == kNone) {
        // Only small neighbours: merge toward the larger one so two regions
        // never swap labels.
        for (const auto& [b, len] : nbrs) {
          const bool bigger = area[b] > area[a] || (area[b] == area[a] && b < a);
          if (bigger && len > best_len) best = b, best_len = len;
        }
      }
      if (best != kNone) {
        target[a] = best;
        any = true;
      }
    }
    if (!any) break;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const std::uint32_t to = target[labels[i]];
      if (to != kNone && tol[to] != t.cells[i]) {
        t.cells[i] = tol[to];
        ++relabelled;
      }
    }
  }
  return relabelled;
}

void sort_regions(std::vector<RegionRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const RegionRecord& a, const RegionRecord& b) {
    if (a.area != b.area) return a.area > b.area;
    if (a.bbox.y0 != b.bbox.y0) return a.bbox.y0 < b.bbox.y0;
    return a.bbox.x0 < b.bbox.x0;
  });
}

std::vector<RegionRecord> eliminate_background(const std::vector<RegionRecord>& records, std::uint32_t width,
                                               std::uint32_t height, std::uint8_t background, unsigned threads,
                                               std::size_t* removed) {
  const auto masks = fill_regions(records, threads);
  ToleranceRaster target(width, height, background);
  paint_masks(masks, records, target);
  const auto own = owners(masks, width, height);

  std::vector<std::uint8_t> keep(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) keep[i] = records[i].tolerance != background;
  for (int round = 0;; ++round) {
    ToleranceRaster cur(width, height, background);
    paint_masks(masks, records, cur, keep);
    bool changed = false;
    const std::vector<std::uint8_t> was = keep;
    for (std::size_t p = 0; p < cur.cells.size(); ++p) {
      if (cur.cells[p] == target.cells[p]) continue;
      const std::uint32_t o = own[p];
      if (o == kNone || was[o]) throw Error(ErrorCode::kInternal, "background elimination cannot restore a pixel");
      keep[o] = 1;
      changed = true;
    }
    if (!changed) break;
    if (round > 64) throw Error(ErrorCode::kInternal, "background elimination does not converge");
  }
  std::vector<RegionRecord> out;
  for (std::size_t i = 0; i < records.size(); ++i)
    if (keep[i]) out.push_back(records[i]);
  if (removed) *removed = records.size() - out.size();
  return out;
}

RegionSet build_region_set(const ToleranceRaster& input, const StoreOptions& options) {
  RegionSet set;
  ToleranceRaster t = input;
  const std::uint32_t w = t.width, h = t.height;
  if (options.absorb_small) set.absorbed_pixels = absorb_small_regions(t, min_region_size(w, h));

  const auto regions = extract_regions(t);
  std::vector<RegionRecord> records(regions.size());
  parallel_for(regions.size(), options.threads, [&](std::size_t i) {
    const PixelRegion& r = regions[i];
    RegionRecord rec;
    rec.contour = contour_region(r);
    if (options.reduce_per_100px > 0) rec.contour = reduce_contour(rec.contour, r.area(), options.reduce_per_100px);
    rec.tolerance = r.tolerance;
    rec.area = r.area();
    rec.bbox = r.bbox;
    records[i] = std::move(rec);
  });
  sort_regions(records);
  for (const auto& r : records) set.vertices_before += r.contour.vertex_count();

  const auto masks = fill_regions(records, options.threads);
  ToleranceRaster target(w, h, options.background);
  paint_masks(masks, records, target);
  if (options.reduce_per_100px == 0 && target != t)
    throw Error(ErrorCode::kInternal, "contours do not reproduce the tolerance raster");

  // Hole elision: a hole whose pixels are all overwritten by later records
  // does not need to be stored.
  const auto own = owners(masks, w, h);
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto& holes = records[i].contour.holes;
    std::vector<std::vector<Vertex>> kept;
    for (auto& hole : holes) {
      const PixelMask m = fill_ring(hole);
      bool covered = true;
      for (const Vertex& v : m.pixels()) {
        if (v.x < 0 || v.y < 0 || static_cast<std::uint32_t>(v.x) >= w || static_cast<std::uint32_t>(v.y) >= h) {
          covered = false;
          break;
        }
        const std::uint32_t o = own[static_cast<std::size_t>(v.y) * w + static_cast<std::size_t>(v.x)];
        if (o == kNone || o <= i) {
          covered = false;
          break;
        }
      }
      if (covered) {
        ++set.elided_holes;
      } else {
        kept.push_back(std::move(hole));
      }
    }
    holes = std::move(kept);
  }

  if (options.eliminate_background) {
    set.records = eliminate_background(records, w, h, options.background, options.threads, &set.eliminated);
  } else {
    set.records = std::move(records);
  }
  for (const auto& r : set.records) set.vertices_after += r.contour.vertex_count();
  set.decoded = std::move(target);
  if (reconstruct_tolerance(set.records, w, h, options.background, options.threads) != set.decoded)
    throw Error(ErrorCode::kInternal, "stored regions do not reproduce the tolerance raster");
  return set;
}

std::vector<std::uint8_t> serialize_regions(std::span<const RegionRecord> records, std::span<const CodecId> codecs,
                                            ShapeStreamStats* stats) {
  ByteWriter sizes, tolerances, xs, ys;
  std::map<std::vector<Vertex>, std::uint64_t> dict[2];
  ShapeStreamStats st;
  Vertex prev{0, 0};
  auto ring = [&](const std::vector<Vertex>& v, int kind) {
    const LocalRing local = localize(v);
    xs.varint(signbit_encode(std::int64_t{local.corner.x} - prev.x));
    ys.varint(signbit_encode(std::int64_t{local.corner.y} - prev.y));
    prev = local.corner;
    const auto it = dict[kind].find(local.offsets);
    if (it != dict[kind].end()) {
      sizes.varint(0);
      sizes.varint(it->second);
      ++st.dictionary_hits;
      return;
    }
    sizes.varint(local.offsets.size());
    for (const Vertex& o : local.offsets) {
      xs.varint(static_cast<std::uint64_t>(o.x));
      ys.varint(static_cast<std::uint64_t>(o.y));
    }
    st.stored_vertices += local.offsets.size();
    const std::uint64_t index = dict[kind].size();
    dict[kind].emplace(local.offsets, index);
  };
  sizes.varint(records.size());
  for (const auto& r : records) {
    if (r.contour.outer.empty()) throw Error(ErrorCode::kInvalidArgument, "region without an outer ring");
    tolerances.varint(r.tolerance);
    sizes.varint(r.contour.holes.size());
    ring(r.contour.outer, 0);
    for (const auto& hole : r.contour.holes) {
      if (hole.empty()) throw Error(ErrorCode::kInvalidArgument, "empty hole ring");
      ring(hole, 1);
    }
  }
  ByteWriter out;
  for (ByteWriter* part : {&sizes, &tolerances, &xs, &ys}) write_block(out, part->buffer(), codecs);
  st.bytes = out.size();
  if (stats) *stats = st;
  return out.take();
}

std::vector<RegionRecord> deserialize_regions(std::span<const std::uint8_t> bytes, std::uint32_t width,
                                              std::uint32_t height, std::uint64_t base_offset) {
  ByteReader in(bytes, base_offset);
  const std::uint64_t bound = 48 * std::uint64_t{width} * height + 4096;
  const auto sizes_raw = read_block(in, bound);
  const std::uint64_t tol_at = in.offset();
  const auto tol_raw = read_block(in, bound);
  const std::uint64_t xs_at = in.offset();
  const auto xs_raw = read_block(in, bound);
  const std::uint64_t ys_at = in.offset();
  const auto ys_raw = read_block(in, bound);
  if (!in.done()) in.fail("trailing bytes after the shape stream");

  ByteReader sizes(sizes_raw, base_offset), tolerances(tol_raw, tol_at), xs(xs_raw, xs_at), ys(ys_raw, ys_at);
  std::vector<std::vector<Vertex>> dict[2];
  std::int64_t cx = 0, cy = 0;
  auto ring = [&](int kind) {
    const std::uint64_t d_x = xs.varint(), d_y = ys.varint();
    if (d_x > (1ull << 33) || d_y > (1ull << 33)) xs.fail("ring corner delta out of range");
    cx += signbit_decode(d_x);
    cy += signbit_decode(d_y);
    if (cx < 0 || cy < 0 || cx >= std::int64_t{width} || cy >= std::int64_t{height}) xs.fail("ring corner outside the image");
    const std::uint64_t n = sizes.varint();
    std::vector<Vertex> v;
    if (n == 0) {
      const std::uint64_t idx = sizes.varint();
      if (idx >= dict[kind].size()) sizes.fail("shape dictionary reference out of range");
      v = dict[kind][static_cast<std::size_t>(idx)];
    } else {
      if (n > xs.remaining()) xs.fail("ring longer than the coordinate stream");
      v.reserve(static_cast<std::size_t>(n));
      for (std::uint64_t i = 0; i < n; ++i) {
        const std::uint64_t lx = xs.varint(), ly = ys.varint();
        if (lx >= width || ly >= height) xs.fail("vertex offset outside the image");
        v.push_back({static_cast<std::int32_t>(lx), static_cast<std::int32_t>(ly)});
      }
      dict[kind].push_back(v);
    }
    for (Vertex& p : v) {
      p.x += static_cast<std::int32_t>(cx);
      p.y += static_cast<std::int32_t>(cy);
      if (static_cast<std::uint32_t>(p.x) >= width || static_cast<std::uint32_t>(p.y) >= height)
        xs.fail("vertex outside the image");
    }
    return v;
  };

  const std::uint64_t count = sizes.varint();
  if (count > std::uint64_t{width} * height) sizes.fail("region count exceeds the pixel count");
  std::vector<RegionRecord> out;
  for (std::uint64_t r = 0; r < count; ++r) {
    RegionRecord rec;
    const std::uint64_t tol = tolerances.varint();
    if (tol > 255) tolerances.fail("tolerance index above 255");
    rec.tolerance = static_cast<std::uint8_t>(tol);
    const std::uint64_t holes = sizes.varint();
    if (holes > sizes.remaining()) sizes.fail("hole count exceeds the stream");
    rec.contour.outer = ring(0);
    for (std::uint64_t i = 0; i < holes; ++i) rec.contour.holes.push_back(ring(1));
    rec.bbox = bounds_of(rec.contour.outer);
    out.push_back(std::move(rec));
  }
  if (!sizes.done() || !tolerances.done() || !xs.done() || !ys.done())
    sizes.fail("shape stream sequences have inconsistent lengths");
  return out;
}

}  // namespace agcr
