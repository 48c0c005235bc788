#include "agcr/codec.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <thread>

#include "agcr/decode.hpp"
#include "agcr/error.hpp"
#include "agcr/region_store.hpp"

namespace agcr {
namespace {

bool is_byte_codec(CodecId id) {
  return id == CodecId::kStored || id == CodecId::kGeneralBwt || id == CodecId::kGeneralLz;
}

template <class Fn>
void run_parallel(std::size_t n, unsigned threads, Fn&& fn) {
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

double value_entropy(std::span<const std::uint16_t> v) {
  if (v.empty()) return 0.0;
  std::vector<std::uint64_t> hist(65536, 0);
  for (auto x : v) ++hist[x];
  return shannon_entropy(hist);
}

// Normalized samples through one codec. w/h are the 2D shape for the image
// codec.
EncodedBin make_payload(std::span<const std::uint16_t> samples, CodecId codec, Layout layout, std::uint32_t w,
                        std::uint32_t h) {
  EncodedBin out;
  std::uint16_t max = 0;
  for (auto s : samples) max = std::max(max, s);
  out.descriptor.codec = codec;
  out.descriptor.layout = layout;
  out.descriptor.value_bits = bits_for(max);
  if (is_byte_codec(codec)) {
    const auto raw = pack_samples(samples, out.descriptor.value_bits);
    out.descriptor.raw_len = raw.size();
    out.payload = compress_bytes(codec, raw);
  } else if (codec == CodecId::kPredictiveImage) {
    ImagePlane img{w, h, out.descriptor.value_bits, {samples.begin(), samples.end()}};
    out.payload = jpegls_encode(img);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "codec cannot carry a lossless bin");
  }
  return out;
}

std::vector<std::uint16_t> payload_samples(const EncodedBin& bin, std::size_t count, std::uint32_t w,
                                           std::uint32_t h) {
  const BinDescriptor& d = bin.descriptor;
  if (is_byte_codec(d.codec))
    return unpack_samples(decompress_bytes(d.codec, bin.payload, d.raw_len), count, d.value_bits);
  if (d.codec == CodecId::kPredictiveImage) return jpegls_decode(bin.payload, w, h, d.value_bits).samples;
  throw Error(ErrorCode::kInvalidArgument, "codec cannot carry a lossless bin");
}

// One tolerance configuration shared by a family of candidates.
struct Layer {
  std::string name;
  ToleranceRaster t;
  std::uint8_t background = 0;
  std::uint32_t k = 1;
  double sigma = 0.0;
  bool approximate = false;
  bool identity = false;
  std::vector<RegionRecord> records;
  std::vector<std::uint32_t> offsets;
  Raster normalized;
  std::vector<std::vector<std::uint16_t>> label_values;
  std::vector<PixelMask> label_masks;
  ToleranceKind kind = ToleranceKind::kNone;
  std::vector<std::uint8_t> tolerance_payload;
  std::size_t vertices = 0;
  std::size_t vertices_before = 0;
};

void finish_layer(Layer& layer, const Raster& values) {
  const std::uint32_t w = layer.t.width, h = layer.t.height;
  layer.offsets.assign(layer.k, 0xFFFFFFFFu);
  for (std::size_t i = 0; i < values.pixels.size(); ++i) {
    auto& o = layer.offsets[layer.t.cells[i]];
    o = std::min<std::uint32_t>(o, values.pixels[i]);
  }
  for (auto& o : layer.offsets)
    if (o == 0xFFFFFFFFu) o = 0;
  layer.normalized = Raster(w, h, 16, 0);
  layer.label_values.assign(layer.k, {});
  std::vector<BoundingBox> boxes(layer.k);
  for (std::uint32_t y = 0; y < h; ++y)
    for (std::uint32_t x = 0; x < w; ++x) {
      const std::size_t i = std::size_t{y} * w + x;
      const std::uint8_t l = layer.t.cells[i];
      const auto v = static_cast<std::uint16_t>(values.pixels[i] - layer.offsets[l]);
      layer.normalized.pixels[i] = v;
      layer.label_values[l].push_back(v);
      boxes[l].expand(Vertex{static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)});
    }
  layer.normalized.bit_depth = bits_for(*std::max_element(layer.normalized.pixels.begin(), layer.normalized.pixels.end()));
  layer.label_masks.clear();
  for (std::uint32_t l = 0; l < layer.k; ++l) {
    PixelMask m(boxes[l]);
    if (!boxes[l].empty())
      for (std::int32_t y = boxes[l].y0; y <= boxes[l].y1; ++y)
        for (std::int32_t x = boxes[l].x0; x <= boxes[l].x1; ++x)
          if (layer.t.cells[static_cast<std::size_t>(y) * w + static_cast<std::size_t>(x)] == l) m.set({x, y});
    layer.label_masks.push_back(std::move(m));
  }
}

Container base_container(const Layer& layer, const Raster& r, const PackingTransform& packing,
                         const ContainerHeader& proto) {
  Container c;
  c.header = proto;
  c.header.k = static_cast<std::uint16_t>(layer.k);
  c.header.sigma_centipixels = static_cast<std::uint32_t>(std::lround(layer.sigma * 100));
  if (layer.approximate) c.header.flags |= flags::kApproximate;
  c.header.background = layer.background;
  c.header.output_crc = crc32_of_samples(r.pixels);
  c.identity_packing = layer.identity;
  if (!layer.identity) c.packing = packing;
  c.offsets = layer.offsets;
  c.tolerance_kind = layer.kind;
  if (layer.kind == ToleranceKind::kShapes) c.regions = layer.records;
  if (layer.kind == ToleranceKind::kRaster) c.tolerance_payload = layer.tolerance_payload;
  return c;
}

void add_bin(Container& c, EncodedBin bin, std::uint8_t label) {
  bin.descriptor.label = label;
  c.descriptors.push_back(bin.descriptor);
  c.payloads.push_back(std::move(bin.payload));
}

// Per-label encodings reused across candidates.
struct LabelOptions {
  std::optional<EncodedBin> bwt, lz, jls;

  const EncodedBin& smallest_general() const { return lz->payload.size() < bwt->payload.size() ? *lz : *bwt; }
  const EncodedBin& smallest() const {
    const EncodedBin* best = &*bwt;
    for (const EncodedBin* e : {&*lz, &*jls})
      if (e->payload.size() < best->payload.size()) best = e;
    return *best;
  }
};

EncodedBin crop_of(const Layer& layer, std::uint8_t label, CodecId codec) {
  EncodedBin b = encode_bin_cropped(layer.normalized, layer.label_masks[label], codec);
  // Members are already normalized, so the crop minimum is 0.
  if (b.offset != 0) throw Error(ErrorCode::kInternal, "crop offset of a normalized bin");
  return b;
}

std::vector<LabelOptions> label_options(const Layer& layer, unsigned threads) {
  std::vector<LabelOptions> opts(layer.k);
  run_parallel(std::size_t{layer.k} * 3, threads, [&](std::size_t job) {
    const auto l = static_cast<std::uint8_t>(job / 3);
    if (layer.label_values[l].empty()) return;
    switch (job % 3) {
      case 0: opts[l].bwt = make_payload(layer.label_values[l], CodecId::kGeneralBwt, Layout::kRasterOrder, 0, 0); break;
      case 1: opts[l].lz = make_payload(layer.label_values[l], CodecId::kGeneralLz, Layout::kRasterOrder, 0, 0); break;
      default: opts[l].jls = crop_of(layer, l, CodecId::kPredictiveImage); break;
    }
  });
  return opts;
}

}  // namespace

LossSpec parse_loss_spec(std::string_view text) {
  if (text == "lossless") return {};
  if (text == "mean") return {LossMode::kMean, 0.0f};
  float ratio = 0.0f;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), ratio);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(ratio) || ratio < 1.0f)
    throw Error(ErrorCode::kInvalidArgument, "loss must be 'lossless', 'mean' or a ratio >= 1, got '" +
                                                 std::string(text) + "'");
  return {LossMode::kRatio, ratio};
}

EncodedBin encode_bin_binned(std::span<const std::uint16_t> values, CodecId codec) {
  if (values.empty()) throw Error(ErrorCode::kInvalidArgument, "empty bin");
  const std::uint16_t min = *std::min_element(values.begin(), values.end());
  std::vector<std::uint16_t> norm(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) norm[i] = static_cast<std::uint16_t>(values[i] - min);
  EncodedBin b = make_payload(norm, codec, Layout::kRasterOrder, 0, 0);
  b.offset = min;
  return b;
}

std::vector<std::uint16_t> decode_bin_binned(const EncodedBin& bin, std::size_t count) {
  auto v = payload_samples(bin, count, 0, 0);
  for (auto& x : v) x = static_cast<std::uint16_t>(x + bin.offset);
  return v;
}

EncodedBin encode_bin_cropped(const Raster& values, const PixelMask& members, CodecId codec) {
  const BoundingBox& box = members.box();
  if (box.empty() || members.count() == 0) throw Error(ErrorCode::kInvalidArgument, "degenerate crop window");
  if (box.x0 < 0 || box.y0 < 0 || box.x1 >= static_cast<std::int64_t>(values.width) ||
      box.y1 >= static_cast<std::int64_t>(values.height))
    throw Error(ErrorCode::kInvalidArgument, "crop window outside the raster");
  std::uint16_t min = 0xFFFF;
  for (std::int32_t y = box.y0; y <= box.y1; ++y)
    for (std::int32_t x = box.x0; x <= box.x1; ++x)
      if (members.test(x, y)) min = std::min(min, values.at(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y)));
  const auto bw = static_cast<std::uint32_t>(box.width()), bh = static_cast<std::uint32_t>(box.height());
  std::vector<std::uint16_t> crop(std::size_t{bw} * bh, 0);
  for (std::int32_t y = box.y0; y <= box.y1; ++y)
    for (std::int32_t x = box.x0; x <= box.x1; ++x)
      if (members.test(x, y))
        crop[static_cast<std::size_t>(y - box.y0) * bw + static_cast<std::size_t>(x - box.x0)] =
            static_cast<std::uint16_t>(values.at(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y)) - min);
  EncodedBin b = make_payload(crop, codec, Layout::kCrop, bw, bh);
  b.descriptor.bbox = box;
  b.offset = min;
  return b;
}

std::vector<std::uint16_t> decode_bin_cropped(const EncodedBin& bin, const PixelMask& members) {
  const BoundingBox& box = bin.descriptor.bbox;
  const auto bw = static_cast<std::uint32_t>(box.width()), bh = static_cast<std::uint32_t>(box.height());
  const auto crop = payload_samples(bin, std::size_t{bw} * bh, bw, bh);
  std::vector<std::uint16_t> out;
  for (std::int32_t y = box.y0; y <= box.y1; ++y)
    for (std::int32_t x = box.x0; x <= box.x1; ++x)
      if (members.test(x, y))
        out.push_back(static_cast<std::uint16_t>(
            crop[static_cast<std::size_t>(y - box.y0) * bw + static_cast<std::size_t>(x - box.x0)] + bin.offset));
  return out;
}

EncodedBin encode_inplace(const Raster& values, CodecId codec) {
  const std::uint16_t min = *std::min_element(values.pixels.begin(), values.pixels.end());
  std::vector<std::uint16_t> norm(values.pixels.size());
  for (std::size_t i = 0; i < norm.size(); ++i) norm[i] = static_cast<std::uint16_t>(values.pixels[i] - min);
  EncodedBin b = make_payload(norm, codec, Layout::kWhole, values.width, values.height);
  b.offset = min;
  return b;
}

Raster decode_inplace(const EncodedBin& bin, std::uint32_t width, std::uint32_t height) {
  Raster out(width, height, 16, 0);
  out.pixels = payload_samples(bin, std::size_t{width} * height, width, height);
  for (auto& v : out.pixels) v = static_cast<std::uint16_t>(v + bin.offset);
  return out;
}

const Candidate& select_strategy(std::span<const Candidate> candidates) {
  if (candidates.empty()) throw Error(ErrorCode::kInvalidArgument, "no candidate encodings");
  auto rank = [](Strategy s) {
    switch (s) {
      case Strategy::kMixed: return 0;
      case Strategy::kBinned: return 1;
      default: return 2;
    }
  };
  const Candidate* best = &candidates[0];
  for (const Candidate& c : candidates.subspan(1)) {
    if (c.bytes.size() < best->bytes.size() ||
        (c.bytes.size() == best->bytes.size() && rank(c.strategy) < rank(best->strategy)))
      best = &c;
  }
  return *best;
}

EncodeResult encode(const Raster& r, const EncodeConfig& cfg) {
  r.validate();
  const unsigned threads = resolve_threads(cfg.threads);
  EncodeResult result;
  EncodeReport& rep = result.report;
  rep.stats = compute_stats(r);
  rep.raw_bytes = r.pixels.size() * 2;
  const std::uint32_t w = r.width, h = r.height;
  const PackedRaster pk = histogram_pack(r);
  // An all-lossless loss map is a plain template encode.
  const bool plus = std::any_of(cfg.loss.begin(), cfg.loss.end(),
                                [](const auto& e) { return e.second.mode != LossMode::kLossless; });
  if (!cfg.loss.empty() && !cfg.label_template) throw Error(ErrorCode::kInvalidArgument, "per-bin loss needs a template");
  if (cfg.label_template && cfg.strategy == Strategy::kInPlace && plus)
    throw Error(ErrorCode::kInvalidArgument, "lossy bins need a binned strategy");

  // Tolerance raster.
  ToleranceRaster thresholded;
  std::uint32_t k = 1;
  double sigma = 0.0;
  // Extra two-bin Otsu split tried by Auto next to the tuned plan.
  std::optional<ToleranceRaster> binary;
  double binary_sigma = 0.0;
  if (cfg.label_template) {
    thresholded = tolerance_raster(pk.packed, ThresholdPlan{}, cfg.label_template);
    k = thresholded.max_label() + 1;
  } else {
    const auto packed_hist = [&] {
      std::vector<std::uint64_t> hh(pk.transform.size(), 0);
      for (auto v : pk.packed.pixels) ++hh[v];
      return hh;
    }();
    std::optional<std::uint32_t> floor;
    if (cfg.floor) {
      floor = pk.transform.pack(*cfg.floor);
    } else if (rep.stats.distinct_values >= 2 &&
               (static_cast<std::uint32_t>(rep.stats.dynamic_range.second - rep.stats.dynamic_range.first) <
                    cfg.otsu_max_range ||
                rep.stats.gini > cfg.otsu_min_gini)) {
      floor = pk.transform.pack(static_cast<std::uint16_t>(otsu_floor(histogram(r))));
    }
    ThresholdPlan plan;
    if (cfg.bins) {
      if (*cfg.bins < 1 || *cfg.bins > 256) throw Error(ErrorCode::kInvalidArgument, "--bins must be in 1..256");
      BinOptions bo;
      bo.max_bins = *cfg.bins;
      // The requested count replaces the probability criterion.
      bo.probability_cap = 0.0;
      bo.intensities = pk.transform.distinct_values;
      plan = build_bins(packed_hist, rep.stats.gini, floor, bo);
      sigma = cfg.sigma.value_or(0.0);
    } else {
      AutoTuneConfig atc;
      atc.floor = floor;
      if (cfg.sigma) atc.max_sigma_steps = 0;
      AutoTuneResult tuned = auto_tune(pk.packed, rep.stats.gini, atc);
      plan = std::move(tuned.plan);
      sigma = cfg.sigma.value_or(tuned.sigma);
      if (cfg.strategy == Strategy::kAuto && pk.transform.size() >= 2) {
        const std::uint32_t t = std::max<std::uint32_t>(1, otsu_floor(packed_hist));
        ThresholdPlan two;
        two.bins = {Bin{0, t - 1, 0}, Bin{t, pk.transform.size() - 1, 0}};
        if (two.bins != plan.bins || sigma != 0.0) {
          binary_sigma = cfg.sigma.value_or(0.0);
          auto bt = tolerance_raster(gaussian_blur(pk.packed, binary_sigma), two);
          if (!cfg.sigma && count_regions(bt) > 2 * atc.regions_per_bin) {
            binary_sigma = tuned.sigma;
            bt = tolerance_raster(gaussian_blur(pk.packed, binary_sigma), two);
          }
          binary = std::move(bt);
        }
      }
    }
    while (plan.k() > 256) merge_smallest_bin(plan);
    if (sigma < 0 || !std::isfinite(sigma)) throw Error(ErrorCode::kInvalidArgument, "sigma must be >= 0");
    thresholded = tolerance_raster(gaussian_blur(pk.packed, sigma), plan);
    k = plan.k();
  }
  if (!cfg.loss.empty())
    for (std::uint32_t l = 0; l < k; ++l)
      if (!cfg.loss.count(l) && std::count(thresholded.cells.begin(), thresholded.cells.end(), l))
        throw Error(ErrorCode::kInvalidArgument, "template label " + std::to_string(l) + " has no --loss entry");
  for (const auto& [label, spec] : cfg.loss)
    if (label > 255) throw Error(ErrorCode::kInvalidArgument, "loss labels must be < 256");

  ContainerHeader proto;
  proto.width = w;
  proto.height = h;
  proto.bit_depth = r.bit_depth;
  proto.reduce = static_cast<std::uint16_t>(cfg.label_template ? 0 : std::min<std::uint32_t>(cfg.reduce, 0xFFFF));
  if (cfg.label_template) proto.flags |= flags::kTemplate;
  if (cfg.novis) proto.flags |= flags::kNoVis;
  if (cfg.slowest) proto.flags |= flags::kSlowest;
  if (plus) proto.flags |= flags::kPlus;
  if (!backend_info(CodecId::kPredictiveImage).available) proto.flags |= flags::kPredictiveUnavailable;
  if (!backend_info(CodecId::kLossyWavelet).available) proto.flags |= flags::kWaveletUnavailable;

  // Region layers, one per background choice.
  std::vector<std::uint8_t> backgrounds{0};
  if (cfg.slowest) {
    backgrounds.clear();
    std::vector<bool> present(256, false);
    for (auto c : thresholded.cells) present[c] = true;
    for (std::uint32_t l = 0; l < k; ++l)
      if (present[l]) backgrounds.push_back(static_cast<std::uint8_t>(l));
  }
  std::vector<Layer> layers;
  auto add_layer = [&](const ToleranceRaster& src, std::uint32_t lk, double ls, std::uint8_t bg, std::string name) {
    StoreOptions so;
    so.background = bg;
    so.absorb_small = !cfg.label_template;
    so.reduce_per_100px = cfg.label_template ? 0 : cfg.reduce;
    so.threads = threads;
    RegionSet rs = build_region_set(src, so);
    Layer layer;
    layer.name = std::move(name);
    layer.t = std::move(rs.decoded);
    layer.background = bg;
    layer.k = lk;
    layer.sigma = ls;
    layer.approximate = layer.t != src;
    layer.records = std::move(rs.records);
    layer.vertices = rs.vertices_after;
    layer.vertices_before = rs.vertices_before;
    layer.kind = layer.records.empty() ? ToleranceKind::kNone : ToleranceKind::kShapes;
    if (cfg.novis && layer.k > 1) {
      ImagePlane labels{w, h, bits_for(lk - 1), {layer.t.cells.begin(), layer.t.cells.end()}};
      auto jls = jpegls_encode(labels);
      const auto shapes = serialize_regions(layer.records);
      if (layer.records.empty() || jls.size() < shapes.size()) {
        layer.kind = ToleranceKind::kRaster;
        layer.tolerance_payload = std::move(jls);
      }
    }
    finish_layer(layer, pk.packed);
    layers.push_back(std::move(layer));
  };
  for (std::uint8_t bg : backgrounds) add_layer(thresholded, k, sigma, bg, "bg" + std::to_string(bg));
  if (binary) add_layer(*binary, 2, binary_sigma, 0, "otsu");

  std::vector<Candidate> candidates;
  std::vector<std::size_t> candidate_layer;
  auto push = [&](std::string name, Strategy s, Container c, std::size_t layer_index) {
    Candidate cand{std::move(name), s, write_container(c)};
    candidates.push_back(std::move(cand));
    candidate_layer.push_back(layer_index);
  };
  auto strategy_of = [](const Container& c) {
    for (const auto& d : c.descriptors)
      if (d.layout != Layout::kRasterOrder) return Strategy::kMixed;
    return Strategy::kBinned;
  };

  if (plus) {
    // AGCR+: template layer only.
    const Layer& layer = layers.front();
    const auto opts = label_options(layer, threads);
    Container c = base_container(layer, r, pk.transform, proto);
    bool mean_used = false;
    for (std::uint32_t l = 0; l < k; ++l) {
      if (layer.label_values[l].empty()) continue;
      const auto it = cfg.loss.find(l);
      const LossSpec spec = it == cfg.loss.end() ? LossSpec{} : it->second;
      const PixelMask& m = layer.label_masks[l];
      if (spec.mode == LossMode::kLossless) {
        add_bin(c, opts[l].smallest(), static_cast<std::uint8_t>(l));
        continue;
      }
      // Original intensities of the members.
      std::uint64_t sum = 0;
      std::size_t n = 0;
      for (std::int32_t y = m.box().y0; y <= m.box().y1; ++y)
        for (std::int32_t x = m.box().x0; x <= m.box().x1; ++x)
          if (m.test(x, y)) sum += r.at(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y)), ++n;
      const auto mean = static_cast<std::uint16_t>((sum + n / 2) / n);
      EncodedBin bin;
      bin.descriptor.loss = spec.mode;
      if (spec.mode == LossMode::kRatio && backend_info(CodecId::kLossyWavelet).available) {
        const BoundingBox& b = m.box();
        ImagePlane img{static_cast<std::uint32_t>(b.width()), static_cast<std::uint32_t>(b.height()), r.bit_depth, {}};
        img.samples.resize(std::size_t{img.width} * img.height, mean);
        for (std::int32_t y = b.y0; y <= b.y1; ++y)
          for (std::int32_t x = b.x0; x <= b.x1; ++x)
            if (m.test(x, y))
              img.samples[static_cast<std::size_t>(y - b.y0) * img.width + static_cast<std::size_t>(x - b.x0)] =
                  r.at(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y));
        bin.payload = j2k_encode(img, spec.ratio);
        bin.descriptor.codec = CodecId::kLossyWavelet;
        bin.descriptor.layout = Layout::kCrop;
        bin.descriptor.bbox = b;
        bin.descriptor.ratio = spec.ratio;
        bin.descriptor.value_bits = r.bit_depth;
      } else {
        bin.descriptor.loss = LossMode::kMean;
        bin.descriptor.codec = CodecId::kStored;
        bin.descriptor.layout = Layout::kRasterOrder;
        bin.descriptor.mean = mean;
        mean_used = true;
      }
      add_bin(c, std::move(bin), static_cast<std::uint8_t>(l));
    }
    if (mean_used) c.header.flags |= flags::kRoiMean;
    c.header.strategy = strategy_of(c);
    // The checksum covers the lossy reconstruction.
    const Raster lossy = decode_container(write_container(c), DecodeOptions{threads, true});
    c.header.output_crc = crc32_of_samples(lossy.pixels);
    for (std::size_t i = 0; i < lossy.pixels.size(); ++i) {
      const auto it = cfg.loss.find(layer.t.cells[i]);
      const bool lossless = it == cfg.loss.end() || it->second.mode == LossMode::kLossless;
      if (lossless && lossy.pixels[i] != r.pixels[i])
        throw Error(ErrorCode::kInternal, "lossless region changed in the AGCR+ reconstruction");
    }
    push("plus", c.header.strategy, std::move(c), 0);
  } else {
    const Strategy want = cfg.strategy;
    const bool any = want == Strategy::kAuto;
    for (std::size_t li = 0; li < layers.size(); ++li) {
      const Layer& layer = layers[li];
      const std::string tag = layers.size() > 1 ? "/" + layer.name : "";
      if (any || want == Strategy::kInPlace) {
        for (CodecId id : {CodecId::kGeneralBwt, CodecId::kGeneralLz, CodecId::kPredictiveImage}) {
          Container c = base_container(layer, r, pk.transform, proto);
          c.header.strategy = Strategy::kInPlace;
          add_bin(c, encode_inplace(layer.normalized, id), 0);
          push("inplace-" + std::string(codec_name(id)) + tag, Strategy::kInPlace, std::move(c), li);
        }
      }
      if (any || want == Strategy::kBinned || want == Strategy::kMixed) {
        const auto opts = label_options(layer, threads);
        if (any || want == Strategy::kBinned) {
          for (int which = 0; which < 2; ++which) {
            Container c = base_container(layer, r, pk.transform, proto);
            c.header.strategy = Strategy::kBinned;
            for (std::uint32_t l = 0; l < layer.k; ++l)
              if (opts[l].bwt) add_bin(c, which == 0 ? *opts[l].bwt : *opts[l].lz, static_cast<std::uint8_t>(l));
            push(std::string("binned-") + (which == 0 ? "bzip2" : "xz") + tag, Strategy::kBinned, std::move(c), li);
          }
        }
        if (any || want == Strategy::kMixed) {
          Container c = base_container(layer, r, pk.transform, proto);
          for (std::uint32_t l = 0; l < layer.k; ++l) {
            if (!opts[l].bwt) continue;
            const bool general = value_entropy(layer.label_values[l]) > cfg.mixed_entropy_bits;
            add_bin(c, general ? opts[l].smallest_general() : *opts[l].jls, static_cast<std::uint8_t>(l));
          }
          c.header.strategy = Strategy::kMixed;
          push("mixed" + tag, Strategy::kMixed, std::move(c), li);
          if (cfg.slowest) {
            Container best = base_container(layer, r, pk.transform, proto);
            for (std::uint32_t l = 0; l < layer.k; ++l)
              if (opts[l].bwt) add_bin(best, opts[l].smallest(), static_cast<std::uint8_t>(l));
            best.header.strategy = strategy_of(best);
            push("per-bin-best" + tag, best.header.strategy, std::move(best), li);
          }
        }
      }
    }
    // Single-bin baselines without any shapes; skipped when the user pinned
    // the threshold parameters.
    if (any && !cfg.label_template && !cfg.bins && !cfg.sigma && !cfg.floor) {
      for (int identity = 1; identity >= 0; --identity) {
        Layer plain;
        plain.name = identity ? "raw" : "packed";
        plain.t = ToleranceRaster(w, h, 0);
        plain.identity = identity != 0;
        finish_layer(plain, identity ? r : pk.packed);
        for (CodecId id : {CodecId::kGeneralBwt, CodecId::kGeneralLz, CodecId::kPredictiveImage}) {
          Container c = base_container(plain, r, pk.transform, proto);
          c.header.strategy = Strategy::kInPlace;
          c.header.reduce = 0;
          add_bin(c, encode_inplace(plain.normalized, id), 0);
          push("single-" + plain.name + "-" + std::string(codec_name(id)), Strategy::kInPlace, std::move(c),
               layers.size() + static_cast<std::size_t>(identity));
        }
      }
    }

    // Round-trip verification; failing candidates are dropped.
    std::vector<std::uint8_t> ok(candidates.size(), 0);
    std::vector<std::string> why(candidates.size());
    run_parallel(candidates.size(), threads, [&](std::size_t i) {
      try {
        ok[i] = decode_container(candidates[i].bytes, DecodeOptions{1, false}) == r;
        if (!ok[i]) why[i] = "decoded image differs";
      } catch (const std::exception& e) {
        why[i] = e.what();
      }
    });
    std::vector<Candidate> verified;
    std::vector<std::size_t> verified_layer;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (ok[i]) {
        verified.push_back(std::move(candidates[i]));
        verified_layer.push_back(candidate_layer[i]);
      } else {
        rep.warnings.push_back("candidate " + candidates[i].name + " dropped: " + why[i]);
      }
    }
    if (verified.empty()) throw Error(ErrorCode::kInternal, "no candidate encoding survived verification");
    candidates = std::move(verified);
    candidate_layer = std::move(verified_layer);
  }

  for (const auto& c : candidates) rep.candidates.push_back({c.name, c.strategy, c.bytes.size()});
  const Candidate& chosen = select_strategy(candidates);
  const std::size_t chosen_index = static_cast<std::size_t>(&chosen - candidates.data());
  result.bytes = chosen.bytes;

  const Container parsed = parse_container(result.bytes);
  rep.strategy = parsed.header.strategy;
  rep.candidate = chosen.name;
  rep.k = parsed.header.k;
  rep.sigma = parsed.header.sigma_centipixels / 100.0;
  rep.background = parsed.header.background;
  rep.flags = parsed.header.flags;
  rep.bytes = result.bytes.size();
  rep.regions = parsed.regions.size();
  for (const auto& rr : parsed.regions) rep.vertices += rr.contour.vertex_count();
  const std::size_t li = candidate_layer[chosen_index];
  if (li < layers.size()) {
    rep.vertices_before_elimination = layers[li].vertices_before;
    for (const auto& rr : layers[li].records) rep.region_pixels += rr.area;
  }
  const ToleranceRaster t = decode_tolerance(parsed, threads);
  std::vector<std::size_t> counts(256, 0);
  for (auto c : t.cells) ++counts[c];
  for (std::size_t i = 0; i < parsed.descriptors.size(); ++i) {
    const auto& d = parsed.descriptors[i];
    rep.bins.push_back({d.label, d.layout == Layout::kWhole ? t.cells.size() : counts[d.label], d.codec, d.layout,
                        d.loss, parsed.payloads[i].size()});
  }
  return result;
}

}  // namespace agcr
