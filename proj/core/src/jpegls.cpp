// JPEG-LS (ITU-T T.87) lossless coding of one component, NEAR = 0, no
// interleave, default thresholds.

#include <algorithm>
#include <array>
#include <cstdlib>

#include "agcr/backend.hpp"
#include "agcr/error.hpp"

namespace agcr {
namespace {

constexpr int kJ[32] = {0, 0, 0, 0, 1, 1, 1, 1, 2, 2,  2,  2,  3,  3,  3,  3,
                        4, 4, 5, 5, 6, 6, 7, 7, 8, 9, 10, 11, 12, 13, 14, 15};
constexpr int kContexts = 365;

[[noreturn]] void corrupt(const char* what, std::size_t at) {
  throw CorruptError(std::string("JPEG-LS: ") + what, at);
}

struct Params {
  int maxval = 0;
  int range = 0;
  int qbpp = 0;
  int limit = 0;
  int t1 = 0, t2 = 0, t3 = 0;
  int reset = 64;
};

int ceil_log2(int v) {
  int n = 0;
  while ((1 << n) < v) ++n;
  return n;
}

int clamp_t(int i, int j, int maxval) { return (i > maxval || i < j) ? j : i; }

Params default_params(int maxval) {
  Params p;
  p.maxval = maxval;
  p.range = maxval + 1;
  p.qbpp = ceil_log2(p.range);
  const int bpp = std::max(2, ceil_log2(maxval + 1));
  p.limit = 2 * (bpp + std::max(8, bpp));
  if (maxval >= 128) {
    const int factor = (std::min(maxval, 4095) + 128) / 256;
    p.t1 = clamp_t(factor * (3 - 2) + 2, 1, maxval);
    p.t2 = clamp_t(factor * (7 - 3) + 3, p.t1, maxval);
    p.t3 = clamp_t(factor * (21 - 4) + 4, p.t2, maxval);
  } else {
    const int factor = 256 / (maxval + 1);
    p.t1 = clamp_t(std::max(2, 3 / factor), 1, maxval);
    p.t2 = clamp_t(std::max(3, 7 / factor), p.t1, maxval);
    p.t3 = clamp_t(std::max(4, 21 / factor), p.t2, maxval);
  }
  return p;
}

struct RegularContext {
  int a = 0, b = 0, c = 0, n = 1;

  int golomb_k() const {
    int k = 0;
    while ((n << k) < a && k < 30) ++k;
    return k;
  }
  void update(int err, int reset) {
    a += std::abs(err);
    b += err;
    if (n == reset) {
      a >>= 1;
      b >>= 1;
      n >>= 1;
    }
    ++n;
    if (b + n <= 0) {
      b += n;
      if (b <= -n) b = -n + 1;
      if (c > -128) --c;
    } else if (b > 0) {
      b -= n;
      if (b > 0) b = 0;
      if (c < 127) ++c;
    }
  }
};

struct RunContext {
  int a = 0, n = 1, nn = 0;
  int type = 0;

  int golomb_k() const {
    const int temp = a + (n >> 1) * type;
    int ntest = n;
    int k = 0;
    for (; ntest < temp && k < 30; ++k) ntest <<= 1;
    return k;
  }
  bool map(int err, int k) const {
    if (k == 0 && err > 0 && 2 * nn < n) return true;
    if (err < 0 && 2 * nn >= n) return true;
    if (err < 0 && k != 0) return true;
    return false;
  }
  void update(int err, int mapped, int reset) {
    if (err < 0) ++nn;
    a += (mapped + 1 - type) >> 1;
    if (n == reset) {
      a >>= 1;
      n >>= 1;
      nn >>= 1;
    }
    ++n;
  }
};

int quantize(int d, const Params& p) {
  if (d <= -p.t3) return -4;
  if (d <= -p.t2) return -3;
  if (d <= -p.t1) return -2;
  if (d < 0) return -1;
  if (d == 0) return 0;
  if (d < p.t1) return 1;
  if (d < p.t2) return 2;
  if (d < p.t3) return 3;
  return 4;
}

int med(int ra, int rb, int rc) {
  if (rc >= std::max(ra, rb)) return std::min(ra, rb);
  if (rc <= std::min(ra, rb)) return std::max(ra, rb);
  return ra + rb - rc;
}

int modulo_range(int e, int range) {
  if (e < 0) e += range;
  if (e >= (range + 1) / 2) e -= range;
  return e;
}

int reconstruct(int v, const Params& p) {
  if (v < 0) v += p.range;
  if (v > p.maxval) v -= p.range;
  return v;
}

// Bit sink with the T.87 marker stuffing rule: a byte following 0xFF carries
// only 7 bits.
class BitWriter {
 public:
  explicit BitWriter(std::vector<std::uint8_t>& out) : out_(out) {}

  void bit(unsigned b) {
    acc_ = (acc_ << 1) | (b & 1u);
    if (++n_ == (prev_ff_ ? 7 : 8)) emit();
  }
  void bits(std::uint32_t v, int n) {
    for (int i = n - 1; i >= 0; --i) bit((v >> i) & 1u);
  }
  void zeros(int n) {
    for (int i = 0; i < n; ++i) bit(0);
  }
  void flush() {
    if (n_ > 0) {
      acc_ <<= (prev_ff_ ? 7 : 8) - n_;
      emit();
    }
    if (prev_ff_) out_.push_back(0);
  }

 private:
  void emit() {
    const auto b = static_cast<std::uint8_t>(acc_);
    out_.push_back(b);
    prev_ff_ = b == 0xFF;
    acc_ = 0;
    n_ = 0;
  }
  std::vector<std::uint8_t>& out_;
  std::uint32_t acc_ = 0;
  int n_ = 0;
  bool prev_ff_ = false;
};

class BitReader {
 public:
  BitReader(std::span<const std::uint8_t> data, std::size_t base) : data_(data), base_(base) {}

  unsigned bit() {
    if (left_ == 0) {
      if (pos_ >= data_.size()) corrupt("scan data truncated", base_ + pos_);
      cur_ = data_[pos_++];
      left_ = prev_ff_ ? 7 : 8;
      prev_ff_ = cur_ == 0xFF;
    }
    --left_;
    return (cur_ >> left_) & 1u;
  }
  std::uint32_t bits(int n) {
    std::uint32_t v = 0;
    for (int i = 0; i < n; ++i) v = (v << 1) | bit();
    return v;
  }
  std::size_t offset() const { return base_ + pos_; }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t base_;
  std::size_t pos_ = 0;
  int left_ = 0;
  std::uint8_t cur_ = 0;
  bool prev_ff_ = false;
};

void encode_mapped(BitWriter& w, int k, int mapped, int limit, int qbpp) {
  const int high = mapped >> k;
  if (high < limit - qbpp - 1) {
    w.zeros(high);
    w.bit(1);
    if (k) w.bits(static_cast<std::uint32_t>(mapped) & ((1u << k) - 1), k);
  } else {
    w.zeros(limit - qbpp - 1);
    w.bit(1);
    w.bits(static_cast<std::uint32_t>(mapped - 1) & ((1u << qbpp) - 1), qbpp);
  }
}

int decode_mapped(BitReader& r, int k, int limit, int qbpp) {
  int high = 0;
  while (r.bit() == 0) {
    if (++high > limit) corrupt("Golomb code too long", r.offset());
  }
  if (high >= limit - qbpp - 1) return static_cast<int>(r.bits(qbpp)) + 1;
  if (k == 0) return high;
  return (high << k) + static_cast<int>(r.bits(k));
}

// Shared line/context state. The coder walks pixels identically in both
// directions; only the sample source/sink differ.
struct ScanState {
  Params p;
  std::array<RegularContext, kContexts> ctx{};
  std::array<RunContext, 2> run{};
  int run_index = 0;

  explicit ScanState(const Params& params) : p(params) {
    const int a0 = std::max(2, (p.range + 32) / 64);
    for (auto& c : ctx) c.a = a0;
    for (int i = 0; i < 2; ++i) {
      run[i].a = a0;
      run[i].type = i;
    }
  }
  void inc_run() {
    if (run_index < 31) ++run_index;
  }
  void dec_run() {
    if (run_index > 0) --run_index;
  }
};

void write_u16(std::vector<std::uint8_t>& out, unsigned v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

}  // namespace

std::vector<std::uint8_t> jpegls_encode(const ImagePlane& img) {
  if (img.width == 0 || img.height == 0 || img.samples.size() != std::size_t{img.width} * img.height)
    throw Error(ErrorCode::kInvalidArgument, "JPEG-LS: bad image geometry");
  if (img.width > 65535 || img.height > 65535)
    throw Error(ErrorCode::kUnsupportedOperation, "JPEG-LS: dimensions above 65535");
  const int depth = std::clamp<int>(img.bit_depth, 2, 16);
  const Params p = default_params((1 << depth) - 1);
  const int w = static_cast<int>(img.width);

  std::vector<std::uint8_t> out;
  out.reserve(img.samples.size() + 64);
  out.insert(out.end(), {0xFF, 0xD8, 0xFF, 0xF7});
  write_u16(out, 11);
  out.push_back(static_cast<std::uint8_t>(depth));
  write_u16(out, img.height);
  write_u16(out, img.width);
  out.insert(out.end(), {1, 1, 0x11, 0});
  out.insert(out.end(), {0xFF, 0xDA});
  write_u16(out, 8);
  out.insert(out.end(), {1, 1, 0, 0, 0, 0});

  BitWriter bw(out);
  ScanState s(p);
  std::vector<int> prev(static_cast<std::size_t>(w) + 2, 0), cur(static_cast<std::size_t>(w) + 2, 0);
  for (std::uint32_t y = 0; y < img.height; ++y) {
    const std::uint16_t* row = img.samples.data() + std::size_t{y} * img.width;
    for (int x = 0; x < w; ++x)
      if (row[x] > p.maxval) throw Error(ErrorCode::kInvalidArgument, "JPEG-LS: sample exceeds bit depth");
    prev[static_cast<std::size_t>(w) + 1] = prev[static_cast<std::size_t>(w)];
    cur[0] = prev[1];
    int x = 0;
    while (x < w) {
      const std::size_t i = static_cast<std::size_t>(x) + 1;
      const int ra = cur[i - 1], rb = prev[i], rc = prev[i - 1], rd = prev[i + 1];
      const int d1 = rd - rb, d2 = rb - rc, d3 = rc - ra;
      if (d1 == 0 && d2 == 0 && d3 == 0) {
        int len = 0;
        while (x < w && row[x] == ra) {
          cur[static_cast<std::size_t>(x) + 1] = ra;
          ++len;
          ++x;
        }
        while (len >= (1 << kJ[s.run_index])) {
          bw.bit(1);
          len -= 1 << kJ[s.run_index];
          s.inc_run();
        }
        if (x == w) {
          if (len > 0) bw.bit(1);
          break;
        }
        bw.bit(0);
        if (kJ[s.run_index]) bw.bits(static_cast<std::uint32_t>(len), kJ[s.run_index]);
        // Interruption sample.
        const std::size_t j = static_cast<std::size_t>(x) + 1;
        const int ix = row[x];
        const int rb2 = prev[j];
        RunContext& rc_ctx = s.run[ra == rb2 ? 1 : 0];
        int err = ra == rb2 ? ix - ra : (ix - rb2) * (rb2 > ra ? 1 : -1);
        err = modulo_range(err, p.range);
        const int k = rc_ctx.golomb_k();
        const int mapped = 2 * std::abs(err) - rc_ctx.type - static_cast<int>(rc_ctx.map(err, k));
        encode_mapped(bw, k, mapped, p.limit - kJ[s.run_index] - 1, p.qbpp);
        rc_ctx.update(err, mapped, p.reset);
        cur[j] = ix;
        ++x;
        s.dec_run();
        continue;
      }
      int q = 81 * quantize(d1, p) + 9 * quantize(d2, p) + quantize(d3, p);
      const int sign = q < 0 ? -1 : 1;
      if (q < 0) q = -q;
      RegularContext& c = s.ctx[static_cast<std::size_t>(q)];
      const int px = std::clamp(med(ra, rb, rc) + sign * c.c, 0, p.maxval);
      const int ix = row[x];
      int err = (ix - px) * sign;
      err = modulo_range(err, p.range);
      const int k = c.golomb_k();
      int mapped = err >= 0 ? 2 * err : -2 * err - 1;
      if (k == 0 && 2 * c.b <= -c.n) mapped = err >= 0 ? 2 * err + 1 : -2 * (err + 1);
      encode_mapped(bw, k, mapped, p.limit, p.qbpp);
      c.update(err, p.reset);
      cur[i] = ix;
      ++x;
    }
    std::swap(prev, cur);
  }
  bw.flush();
  out.insert(out.end(), {0xFF, 0xD9});
  return out;
}

ImagePlane jpegls_decode(std::span<const std::uint8_t> data, std::uint32_t width,
                         std::uint32_t height, std::uint8_t bit_depth) {
  std::size_t pos = 0;
  auto need = [&](std::size_t n) {
    if (data.size() - pos < n) corrupt("header truncated", pos);
  };
  auto u8 = [&]() {
    need(1);
    return static_cast<unsigned>(data[pos++]);
  };
  auto u16 = [&]() {
    need(2);
    const unsigned v = (static_cast<unsigned>(data[pos]) << 8) | data[pos + 1];
    pos += 2;
    return v;
  };
  if (u8() != 0xFF || u8() != 0xD8) corrupt("missing SOI", 0);

  const int want_depth = std::clamp<int>(bit_depth, 2, 16);
  int depth = 0;
  unsigned fw = 0, fh = 0;
  Params p;
  bool custom = false;
  Params custom_p;
  for (;;) {
    if (u8() != 0xFF) corrupt("expected marker", pos - 1);
    unsigned m = u8();
    while (m == 0xFF) m = u8();
    if (m == 0xF7) {
      const std::size_t start = pos;
      const unsigned len = u16();
      if (len < 11) corrupt("bad SOF length", start);
      depth = static_cast<int>(u8());
      fh = u16();
      fw = u16();
      if (u8() != 1) throw Error(ErrorCode::kUnsupportedFormat, "JPEG-LS: only one component is supported");
      need(len - 8);
      pos = start + len;
    } else if (m == 0xF8) {
      const std::size_t start = pos;
      const unsigned len = u16();
      if (len < 3) corrupt("bad LSE length", start);
      const unsigned id = u8();
      if (id != 1) throw Error(ErrorCode::kUnsupportedFormat, "JPEG-LS: unsupported LSE segment");
      if (len < 13) corrupt("bad LSE length", start);
      custom = true;
      custom_p.maxval = static_cast<int>(u16());
      custom_p.t1 = static_cast<int>(u16());
      custom_p.t2 = static_cast<int>(u16());
      custom_p.t3 = static_cast<int>(u16());
      custom_p.reset = static_cast<int>(u16());
      need(start + len - pos);
      pos = start + len;
    } else if (m == 0xDA) {
      const std::size_t start = pos;
      const unsigned len = u16();
      if (len < 8) corrupt("bad SOS length", start);
      const unsigned ns = u8();
      if (ns != 1) throw Error(ErrorCode::kUnsupportedFormat, "JPEG-LS: one component per scan expected");
      u8();  // component id
      if (u8() != 0) throw Error(ErrorCode::kUnsupportedFormat, "JPEG-LS: mapping tables unsupported");
      if (u8() != 0) throw Error(ErrorCode::kUnsupportedFormat, "JPEG-LS: near-lossless scans unsupported");
      u8();  // interleave mode, irrelevant for one component
      if (u8() != 0) throw Error(ErrorCode::kUnsupportedFormat, "JPEG-LS: point transform unsupported");
      need(start + len - pos);
      pos = start + len;
      break;
    } else if (m == 0xD9 || m == 0xD8) {
      corrupt("unexpected marker before scan", pos - 1);
    } else {
      const std::size_t start = pos;
      const unsigned len = u16();
      if (len < 2) corrupt("bad segment length", start);
      need(len - 2);
      pos = start + len;
    }
  }
  if (depth == 0) corrupt("missing frame header", pos);
  if (fw != width || fh != height || depth != want_depth)
    corrupt("frame does not match the expected geometry", pos);

  p = default_params((1 << depth) - 1);
  if (custom) {
    if (custom_p.maxval != 0) {
      if (custom_p.maxval >= (1 << depth)) corrupt("LSE MAXVAL exceeds precision", pos);
      p = default_params(custom_p.maxval);
    }
    if (custom_p.t1 != 0) p.t1 = custom_p.t1;
    if (custom_p.t2 != 0) p.t2 = custom_p.t2;
    if (custom_p.t3 != 0) p.t3 = custom_p.t3;
    if (custom_p.reset != 0) p.reset = custom_p.reset;
    if (!(p.t1 <= p.t2 && p.t2 <= p.t3) || p.reset < 3) corrupt("inconsistent LSE parameters", pos);
  }

  // Scan ends at the first marker (0xFF followed by a byte >= 0x80).
  std::size_t end = pos;
  while (end + 1 < data.size() && !(data[end] == 0xFF && data[end + 1] >= 0x80)) ++end;
  if (end + 1 >= data.size()) end = data.size();
  BitReader br(data.subspan(pos, end - pos), pos);

  ImagePlane img;
  img.width = width;
  img.height = height;
  img.bit_depth = bit_depth;
  img.samples.resize(std::size_t{width} * height);
  const int w = static_cast<int>(width);
  ScanState s(p);
  std::vector<int> prev(static_cast<std::size_t>(w) + 2, 0), cur(static_cast<std::size_t>(w) + 2, 0);
  for (std::uint32_t y = 0; y < height; ++y) {
    std::uint16_t* row = img.samples.data() + std::size_t{y} * width;
    prev[static_cast<std::size_t>(w) + 1] = prev[static_cast<std::size_t>(w)];
    cur[0] = prev[1];
    int x = 0;
    while (x < w) {
      const std::size_t i = static_cast<std::size_t>(x) + 1;
      const int ra = cur[i - 1], rb = prev[i], rc = prev[i - 1], rd = prev[i + 1];
      const int d1 = rd - rb, d2 = rb - rc, d3 = rc - ra;
      if (d1 == 0 && d2 == 0 && d3 == 0) {
        const int remaining = w - x;
        int len = 0;
        while (br.bit()) {
          const int count = std::min(1 << kJ[s.run_index], remaining - len);
          len += count;
          if (count == (1 << kJ[s.run_index])) s.inc_run();
          if (len == remaining) break;
        }
        if (len != remaining) len += kJ[s.run_index] ? static_cast<int>(br.bits(kJ[s.run_index])) : 0;
        if (len > remaining) corrupt("run exceeds line", br.offset());
        for (int t = 0; t < len; ++t) {
          cur[static_cast<std::size_t>(x) + 1] = ra;
          row[x] = static_cast<std::uint16_t>(ra);
          ++x;
        }
        if (x == w) break;
        const std::size_t j = static_cast<std::size_t>(x) + 1;
        const int rb2 = prev[j];
        RunContext& rc_ctx = s.run[ra == rb2 ? 1 : 0];
        const int k = rc_ctx.golomb_k();
        const int mapped = decode_mapped(br, k, p.limit - kJ[s.run_index] - 1, p.qbpp);
        const int temp = mapped + rc_ctx.type;
        const bool map = temp & 1;
        const int abs_err = (temp + static_cast<int>(map)) / 2;
        const int err = ((k != 0 || 2 * rc_ctx.nn >= rc_ctx.n) == map) ? -abs_err : abs_err;
        rc_ctx.update(err, mapped, p.reset);
        const int v = ra == rb2 ? reconstruct(ra + err, p) : reconstruct(rb2 + err * (rb2 > ra ? 1 : -1), p);
        if (v < 0 || v > p.maxval) corrupt("sample out of range", br.offset());
        cur[j] = v;
        row[x] = static_cast<std::uint16_t>(v);
        ++x;
        s.dec_run();
        continue;
      }
      int q = 81 * quantize(d1, p) + 9 * quantize(d2, p) + quantize(d3, p);
      const int sign = q < 0 ? -1 : 1;
      if (q < 0) q = -q;
      RegularContext& c = s.ctx[static_cast<std::size_t>(q)];
      const int px = std::clamp(med(ra, rb, rc) + sign * c.c, 0, p.maxval);
      const int k = c.golomb_k();
      const int mapped = decode_mapped(br, k, p.limit, p.qbpp);
      int err = (mapped & 1) ? -((mapped + 1) >> 1) : (mapped >> 1);
      if (k == 0 && 2 * c.b <= -c.n) err = -err - 1;
      if (std::abs(err) > 65535) corrupt("error value out of range", br.offset());
      c.update(err, p.reset);
      const int v = reconstruct(px + sign * err, p);
      if (v < 0 || v > p.maxval) corrupt("sample out of range", br.offset());
      cur[i] = v;
      row[x] = static_cast<std::uint16_t>(v);
      ++x;
    }
    std::swap(prev, cur);
  }
  if (bit_depth < depth) {
    const int lim = (1 << std::max<int>(bit_depth, 1)) - 1;
    for (auto v : img.samples)
      if (v > lim) corrupt("sample exceeds declared depth", pos);
  }
  return img;
}

}  // namespace agcr
