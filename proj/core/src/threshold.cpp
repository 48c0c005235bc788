#include "agcr/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "agcr/error.hpp"

namespace agcr {

std::uint32_t PackingTransform::pack(std::uint16_t value) const noexcept {
  auto it = std::lower_bound(distinct_values.begin(), distinct_values.end(), value);
  return static_cast<std::uint32_t>(it - distinct_values.begin());
}

std::uint16_t PackingTransform::unpack(std::uint32_t packed) const {
  if (packed >= distinct_values.size()) {
    throw Error(ErrorCode::kCorrupt, "packed value " + std::to_string(packed) +
                                         " outside packing table of size " +
                                         std::to_string(distinct_values.size()));
  }
  return distinct_values[packed];
}

PackedRaster histogram_pack(const Raster& r) {
  r.validate();
  std::vector<std::uint8_t> seen(std::size_t{1} << 16, 0);
  for (auto v : r.pixels) seen[v] = 1;

  PackedRaster out;
  std::vector<std::uint16_t> rank(seen.size(), 0);
  for (std::uint32_t v = 0; v < seen.size(); ++v) {
    if (!seen[v]) continue;
    rank[v] = static_cast<std::uint16_t>(out.transform.distinct_values.size());
    out.transform.distinct_values.push_back(static_cast<std::uint16_t>(v));
  }
  out.packed = Raster(r.width, r.height, bits_for(out.transform.size() - 1));
  for (std::size_t i = 0; i < r.size(); ++i) out.packed.pixels[i] = rank[r.pixels[i]];
  return out;
}

Raster histogram_unpack(const Raster& packed, const PackingTransform& t,
                        std::uint8_t original_depth) {
  Raster out(packed.width, packed.height, original_depth);
  for (std::size_t i = 0; i < packed.size(); ++i) out.pixels[i] = t.unpack(packed.pixels[i]);
  return out;
}

// ---------------------------------------------------------------------------

std::uint8_t ThresholdPlan::index_of(std::uint32_t packed) const noexcept {
  auto it = std::lower_bound(bins.begin(), bins.end(), packed,
                             [](const Bin& b, std::uint32_t v) { return b.hi < v; });
  if (it == bins.end()) return static_cast<std::uint8_t>(bins.size() - 1);
  return static_cast<std::uint8_t>(it - bins.begin());
}

std::vector<std::uint8_t> ThresholdPlan::lookup(std::uint32_t n) const {
  std::vector<std::uint8_t> table(n, 0);
  for (std::size_t b = 0; b < bins.size(); ++b) {
    for (std::uint32_t v = bins[b].lo; v <= bins[b].hi && v < n; ++v) {
      table[v] = static_cast<std::uint8_t>(b);
    }
  }
  if (!bins.empty()) {
    for (std::uint32_t v = bins.back().hi + 1; v < n; ++v) {
      table[v] = static_cast<std::uint8_t>(bins.size() - 1);
    }
  }
  return table;
}

namespace {

void subdivide(std::uint32_t lo, std::uint32_t hi, std::uint32_t min_span,
               std::vector<Bin>& out) {
  const std::uint32_t span = hi - lo + 1;
  if (span < min_span || span < 2) {
    out.push_back({lo, hi, 0});
    return;
  }
  const std::uint32_t mid = lo + span / 2;
  subdivide(lo, mid - 1, min_span, out);
  subdivide(mid, hi, min_span, out);
}

std::uint64_t total_count(const std::vector<Bin>& bins) {
  std::uint64_t n = 0;
  for (const auto& b : bins) n += b.count;
  return n;
}

// Relative slack for probability comparisons against thresholds derived from
// the Gini coefficient.
constexpr double kProbSlack = 1e-9;

bool below(std::uint64_t count, std::uint64_t total, double p) {
  if (total == 0) return false;
  const double prob = static_cast<double>(count) / static_cast<double>(total);
  return prob + kProbSlack < p;
}

// The floor bin is always index 0, and absorbing a neighbour keeps it there.
void merge_into_neighbour(ThresholdPlan& plan, std::size_t i) {
  auto& bins = plan.bins;
  std::size_t j;
  if (i == 0) {
    j = 1;
  } else if (i + 1 == bins.size()) {
    j = i - 1;
  } else {
    j = bins[i - 1].count <= bins[i + 1].count ? i - 1 : i + 1;
  }
  const std::size_t left = std::min(i, j);
  bins[left].hi = bins[left + 1].hi;
  bins[left].count += bins[left + 1].count;
  bins.erase(bins.begin() + static_cast<std::ptrdiff_t>(left + 1));
}

}  // namespace

void merge_smallest_bin(ThresholdPlan& plan) {
  if (plan.bins.size() < 2) return;
  std::size_t best = 0;
  for (std::size_t i = 1; i < plan.bins.size(); ++i) {
    if (plan.bins[i].count < plan.bins[best].count) best = i;
  }
  merge_into_neighbour(plan, best);
}

ThresholdPlan build_bins(std::span<const std::uint64_t> packed_hist, double gini,
                         std::optional<std::uint32_t> floor, const BinOptions& options) {
  if (packed_hist.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "build_bins needs a non-empty histogram");
  }
  ThresholdPlan plan;
  const auto top = static_cast<std::uint32_t>(packed_hist.size() - 1);
  const std::uint32_t min_span = options.min_bin_bits >= 31 ? 0xFFFFFFFFu
                                                            : (1u << options.min_bin_bits);
  subdivide(0, top, min_span, plan.bins);
  for (auto& b : plan.bins) {
    for (std::uint32_t v = b.lo; v <= b.hi; ++v) b.count += packed_hist[v];
  }

  bool has_floor_bin = false;
  if (floor && *floor > 0) {
    plan.floor = floor;
    std::size_t n_below = 0;
    while (n_below < plan.bins.size() && plan.bins[n_below].lo < *floor) ++n_below;
    if (n_below >= 1) {
      Bin merged{plan.bins.front().lo, plan.bins[n_below - 1].hi, 0};
      for (std::size_t i = 0; i < n_below; ++i) merged.count += plan.bins[i].count;
      plan.bins.erase(plan.bins.begin(), plan.bins.begin() + static_cast<std::ptrdiff_t>(n_below));
      plan.bins.insert(plan.bins.begin(), merged);
      has_floor_bin = true;
    }
  }

  plan.min_probability = std::min(1.0 - gini, options.probability_cap);
  const std::uint64_t total = total_count(plan.bins);
  while (plan.bins.size() > 1) {
    std::size_t worst = plan.bins.size();
    for (std::size_t i = 0; i < plan.bins.size(); ++i) {
      if (has_floor_bin && i == 0) continue;
      if (!below(plan.bins[i].count, total, plan.min_probability)) continue;
      if (worst == plan.bins.size() || plan.bins[i].count < plan.bins[worst].count) worst = i;
    }
    if (worst == plan.bins.size()) break;
    merge_into_neighbour(plan, worst);
  }

  if (options.max_bins) {
    const std::uint32_t cap = std::max<std::uint32_t>(1, *options.max_bins);
    const auto value = [&](std::uint32_t packed) -> std::uint64_t {
      return options.intensities.empty() ? packed : options.intensities[std::min<std::size_t>(packed, options.intensities.size() - 1)];
    };
    while (plan.k() > cap) {
      std::size_t best = 0;
      std::uint64_t best_gap = 0, best_count = 0;
      for (std::size_t i = 0; i + 1 < plan.bins.size(); ++i) {
        const std::uint64_t gap = value(plan.bins[i + 1].lo) - value(plan.bins[i].hi);
        const std::uint64_t count = plan.bins[i].count + plan.bins[i + 1].count;
        if (i == 0 || gap < best_gap || (gap == best_gap && count < best_count)) {
          best = i;
          best_gap = gap;
          best_count = count;
        }
      }
      plan.bins[best].hi = plan.bins[best + 1].hi;
      plan.bins[best].count += plan.bins[best + 1].count;
      plan.bins.erase(plan.bins.begin() + static_cast<std::ptrdiff_t>(best + 1));
    }
  }
  return plan;
}

std::uint32_t otsu_floor(std::span<const std::uint64_t> hist) {
  std::uint64_t n = 0;
  long double sum = 0.0L;
  std::size_t distinct = 0;
  std::size_t first = hist.size();
  for (std::size_t v = 0; v < hist.size(); ++v) {
    if (hist[v] == 0) continue;
    if (first == hist.size()) first = v;
    ++distinct;
    n += hist[v];
    sum += static_cast<long double>(v) * hist[v];
  }
  if (distinct < 2) {
    throw Error(ErrorCode::kInvalidArgument, "Otsu threshold needs at least two distinct values");
  }

  // Between-class variance up to the constant factor 1/N^2:
  // (n1 * S0 - n0 * S1)^2 / (n0 * n1), background = {v < t}.
  std::uint64_t n0 = 0;
  long double s0 = 0.0L;
  long double best = -1.0L;
  std::uint32_t best_t = 0;
  for (std::size_t t = first + 1; t < hist.size(); ++t) {
    n0 += hist[t - 1];
    s0 += static_cast<long double>(t - 1) * hist[t - 1];
    if (hist[t - 1] == 0) continue;  // same split as the lower t
    const std::uint64_t n1 = n - n0;
    if (n1 == 0) break;
    const long double s1 = sum - s0;
    const long double diff = static_cast<long double>(n1) * s0 - static_cast<long double>(n0) * s1;
    const long double score = diff * diff / (static_cast<long double>(n0) * n1);
    if (score > best) {
      best = score;
      best_t = static_cast<std::uint32_t>(t);
    }
  }
  return best_t;
}

Raster gaussian_blur(const Raster& r, double sigma) {
  if (sigma < 0.0) throw Error(ErrorCode::kInvalidArgument, "sigma must be >= 0");
  if (sigma == 0.0) return r;
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
  double norm = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double w = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
    kernel[static_cast<std::size_t>(i + radius)] = w;
    norm += w;
  }
  for (auto& w : kernel) w /= norm;

  const int w = static_cast<int>(r.width);
  const int h = static_cast<int>(r.height);
  std::vector<double> tmp(r.size());
  for (int y = 0; y < h; ++y) {
    const auto* row = &r.pixels[static_cast<std::size_t>(y) * w];
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        const int xx = std::clamp(x + i, 0, w - 1);
        acc += kernel[static_cast<std::size_t>(i + radius)] * row[xx];
      }
      tmp[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
  Raster out(r.width, r.height, r.bit_depth);
  const double hi = static_cast<double>((1u << r.bit_depth) - 1);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        const int yy = std::clamp(y + i, 0, h - 1);
        acc += kernel[static_cast<std::size_t>(i + radius)] * tmp[static_cast<std::size_t>(yy) * w + x];
      }
      out.pixels[static_cast<std::size_t>(y) * w + x] =
          static_cast<std::uint16_t>(std::clamp(std::round(acc), 0.0, hi));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::uint32_t ToleranceRaster::max_label() const noexcept {
  std::uint32_t m = 0;
  for (auto c : cells) m = std::max<std::uint32_t>(m, c);
  return m;
}

ToleranceRaster tolerance_raster(const Raster& packed, const ThresholdPlan& plan,
                                 const Raster* label_template) {
  ToleranceRaster t(packed.width, packed.height);
  if (label_template != nullptr) {
    if (label_template->width != packed.width || label_template->height != packed.height) {
      throw Error(ErrorCode::kInvalidArgument, "template dimensions do not match the image");
    }
    for (std::size_t i = 0; i < t.cells.size(); ++i) {
      const auto label = label_template->pixels[i];
      if (label >= 256) {
        throw Error(ErrorCode::kInvalidArgument,
                    "template label " + std::to_string(label) + " exceeds 255");
      }
      t.cells[i] = static_cast<std::uint8_t>(label);
    }
    return t;
  }
  if (plan.bins.empty()) throw Error(ErrorCode::kInvalidArgument, "threshold plan has no bins");
  std::uint32_t max_v = 0;
  for (auto v : packed.pixels) max_v = std::max<std::uint32_t>(max_v, v);
  const auto table = plan.lookup(max_v + 1);
  for (std::size_t i = 0; i < t.cells.size(); ++i) t.cells[i] = table[packed.pixels[i]];
  return t;
}

std::size_t count_regions(const ToleranceRaster& t) {
  const std::size_t w = t.width;
  const std::size_t h = t.height;
  std::vector<std::uint8_t> visited(t.cells.size(), 0);
  std::vector<std::size_t> stack;
  std::size_t regions = 0;
  for (std::size_t start = 0; start < t.cells.size(); ++start) {
    if (visited[start]) continue;
    ++regions;
    const std::uint8_t label = t.cells[start];
    visited[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      const std::size_t x = i % w;
      const std::size_t y = i / w;
      auto visit = [&](std::size_t j) {
        if (!visited[j] && t.cells[j] == label) {
          visited[j] = 1;
          stack.push_back(j);
        }
      };
      if (x > 0) visit(i - 1);
      if (x + 1 < w) visit(i + 1);
      if (y > 0) visit(i - w);
      if (y + 1 < h) visit(i + w);
    }
  }
  return regions;
}

namespace {

std::vector<std::uint64_t> packed_histogram(const Raster& packed) {
  std::uint32_t max_v = 0;
  for (auto v : packed.pixels) max_v = std::max<std::uint32_t>(max_v, v);
  std::vector<std::uint64_t> hist(max_v + 1, 0);
  for (auto v : packed.pixels) ++hist[v];
  return hist;
}

}  // namespace

AutoTuneResult auto_tune(const Raster& packed, double gini, const AutoTuneConfig& config) {
  AutoTuneResult result;
  const auto hist = packed_histogram(packed);
  result.plan = build_bins(hist, gini, config.floor, config.bins);

  // Coverage-driven reduction, one bin per iteration.
  const double inv_gini = 1.0 - gini;
  const double n_values = static_cast<double>(hist.size());
  const std::uint64_t total = packed.size();
  while (result.plan.k() > 1) {
    std::size_t offender = result.plan.bins.size();
    for (std::size_t i = 0; i < result.plan.bins.size(); ++i) {
      const auto& b = result.plan.bins[i];
      const double coverage = inv_gini * static_cast<double>(b.span()) / n_values;
      if (below(b.count, total, std::min(coverage, inv_gini))) {
        if (offender == result.plan.bins.size() ||
            b.count < result.plan.bins[offender].count) {
          offender = i;
        }
      }
    }
    if (offender == result.plan.bins.size()) break;
    merge_into_neighbour(result.plan, offender);
  }

  const std::size_t bound = static_cast<std::size_t>(config.regions_per_bin) * result.plan.k();
  std::size_t best_regions = 0;
  double best_sigma = 0.0;
  for (std::uint32_t step = 0; step <= config.max_sigma_steps; ++step) {
    const double sigma = config.sigma_step * step;
    result.sigma_trace.push_back(sigma);
    const Raster blurred = gaussian_blur(packed, sigma);
    const std::size_t regions = count_regions(tolerance_raster(blurred, result.plan));
    if (step == 0 || regions < best_regions) {
      best_regions = regions;
      best_sigma = sigma;
    }
    if (regions <= bound) {
      best_regions = regions;
      best_sigma = sigma;
      break;
    }
  }
  result.sigma = best_sigma;
  result.regions = best_regions;
  return result;
}

}  // namespace agcr
