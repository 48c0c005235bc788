#include "agcr/raster.hpp"

#include <tiffio.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>

#include "agcr/error.hpp"
#include "agcr/threshold.hpp"
#include "byte_io.hpp"

namespace agcr {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kUnsupportedFormat: return "unsupported format";
    case ErrorCode::kUnsupportedOperation: return "unsupported operation";
    case ErrorCode::kCorrupt: return "corrupt data";
    case ErrorCode::kBackend: return "backend failure";
    case ErrorCode::kInternal: return "internal error";
  }
  return "unknown";
}

void Raster::validate() const {
  if (width == 0 || height == 0) {
    throw Error(ErrorCode::kInvalidArgument, "raster has zero width or height");
  }
  if (bit_depth < 1 || bit_depth > 16) {
    throw Error(ErrorCode::kInvalidArgument,
                "bit depth " + std::to_string(bit_depth) + " outside 1..16");
  }
  if (pixels.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorCode::kInvalidArgument, "pixel count does not match dimensions");
  }
  if (bit_depth < 16) {
    const std::uint32_t limit = 1u << bit_depth;
    for (auto v : pixels) {
      if (v >= limit) {
        throw Error(ErrorCode::kInvalidArgument,
                    "sample " + std::to_string(v) + " exceeds bit depth " +
                        std::to_string(bit_depth));
      }
    }
  }
}

std::uint8_t bits_for(std::uint32_t max_value) noexcept {
  std::uint8_t bits = 1;
  while (bits < 16 && (max_value >> bits) != 0) ++bits;
  return bits;
}

std::vector<std::uint64_t> histogram(const Raster& r) {
  std::vector<std::uint64_t> hist(std::size_t{1} << r.bit_depth, 0);
  for (auto v : r.pixels) ++hist[v];
  return hist;
}

double gini_coefficient(std::span<const std::uint64_t> hist) {
  // G = (2 * sum_i i * x_(i)) / (n * sum x) - (n + 1) / n, 1-based ranks over
  // the sorted values. A histogram bucket of c copies of value v occupying
  // ranks [a+1, a+c] contributes v * c * (2a + c + 1) / 2 to sum_i i * x_(i).
  long double weighted = 0.0L;
  long double total = 0.0L;
  std::uint64_t n = 0;
  for (std::size_t v = 0; v < hist.size(); ++v) {
    const std::uint64_t c = hist[v];
    if (c == 0) continue;
    const long double a = static_cast<long double>(n);
    const long double cl = static_cast<long double>(c);
    weighted += static_cast<long double>(v) * cl * (2.0L * a + cl + 1.0L) / 2.0L;
    total += static_cast<long double>(v) * cl;
    n += c;
  }
  if (n == 0 || total == 0.0L) return 0.0;
  const long double nl = static_cast<long double>(n);
  const long double g = 2.0L * weighted / (nl * total) - (nl + 1.0L) / nl;
  return std::clamp(static_cast<double>(g), 0.0, 1.0);
}

double shannon_entropy(std::span<const std::uint64_t> hist) {
  std::uint64_t n = 0;
  for (auto c : hist) n += c;
  if (n == 0) return 0.0;
  double h = 0.0;
  for (auto c : hist) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(n);
    h -= p * std::log2(p);
  }
  return h <= 0.0 ? 0.0 : h;
}

ImageStats compute_stats(const Raster& r) {
  r.validate();
  ImageStats s;
  const auto hist = histogram(r);
  s.gini = gini_coefficient(hist);
  s.shannon_entropy = shannon_entropy(hist);

  long double sum = 0.0L;
  long double sum_sq = 0.0L;
  std::uint16_t lo = 0xFFFF;
  std::uint16_t hi = 0;
  for (std::size_t v = 0; v < hist.size(); ++v) {
    if (hist[v] == 0) continue;
    lo = std::min<std::uint16_t>(lo, static_cast<std::uint16_t>(v));
    hi = std::max<std::uint16_t>(hi, static_cast<std::uint16_t>(v));
    ++s.distinct_values;
    sum += static_cast<long double>(v) * hist[v];
    sum_sq += static_cast<long double>(v) * v * hist[v];
  }
  const long double n = static_cast<long double>(r.size());
  const long double mean = sum / n;
  const long double var = std::max(0.0L, sum_sq / n - mean * mean);
  s.std_dev = static_cast<double>(std::sqrt(var));
  s.dynamic_range = {lo, hi};
  s.normalized_std_dev = hi > lo ? s.std_dev / static_cast<double>(hi - lo) : 0.0;

  if (s.distinct_values >= 2) {
    const std::uint32_t t = otsu_floor(hist);
    std::uint64_t below = 0;
    for (std::uint32_t v = 0; v < t; ++v) below += hist[v];
    s.background_fraction = static_cast<double>(below) / static_cast<double>(r.size());
  }
  return s;
}

// ---------------------------------------------------------------------------
// Raw fixture format: "AGRW" + u32 width + u32 height + u8 depth + u16 samples.

namespace {

constexpr std::array<std::uint8_t, 4> kRawMagic{'A', 'G', 'R', 'W'};

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool has_raw_extension(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".agrw" || ext == ".raw";
}

// libtiff reports problems through global handlers; silence them and rely on
// return codes instead.
void quiet_handler(const char*, const char*, va_list) {}

struct TiffCloser {
  void operator()(TIFF* t) const noexcept {
    if (t != nullptr) TIFFClose(t);
  }
};
using TiffPtr = std::unique_ptr<TIFF, TiffCloser>;

void install_quiet_handlers() {
  static const bool once = [] {
    TIFFSetErrorHandler(quiet_handler);
    TIFFSetWarningHandler(quiet_handler);
    return true;
  }();
  (void)once;
}

Raster load_tiff(const std::filesystem::path& path) {
  install_quiet_handlers();
  TiffPtr tif(TIFFOpen(path.c_str(), "r"));
  if (!tif) throw Error(ErrorCode::kUnsupportedFormat, "cannot parse TIFF " + path.string());

  std::uint32_t w = 0;
  std::uint32_t h = 0;
  std::uint16_t bps = 0;
  std::uint16_t spp = 1;
  std::uint16_t fmt = SAMPLEFORMAT_UINT;
  std::uint16_t planar = PLANARCONFIG_CONTIG;
  TIFFGetField(tif.get(), TIFFTAG_IMAGEWIDTH, &w);
  TIFFGetField(tif.get(), TIFFTAG_IMAGELENGTH, &h);
  TIFFGetFieldDefaulted(tif.get(), TIFFTAG_BITSPERSAMPLE, &bps);
  TIFFGetFieldDefaulted(tif.get(), TIFFTAG_SAMPLESPERPIXEL, &spp);
  TIFFGetFieldDefaulted(tif.get(), TIFFTAG_SAMPLEFORMAT, &fmt);
  TIFFGetFieldDefaulted(tif.get(), TIFFTAG_PLANARCONFIG, &planar);

  if (spp != 1) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "TIFF has " + std::to_string(spp) + " samples per pixel; expected 1");
  }
  if (fmt != SAMPLEFORMAT_UINT) {
    throw Error(ErrorCode::kUnsupportedFormat, "TIFF samples are not unsigned integers");
  }
  if (bps != 8 && bps != 16) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "TIFF bit depth " + std::to_string(bps) + " unsupported (8 or 16 only)");
  }
  if (w == 0 || h == 0) throw Error(ErrorCode::kUnsupportedFormat, "TIFF has no pixels");

  Raster r(w, h, static_cast<std::uint8_t>(bps));
  std::uint16_t max_sample = 0;
  if (TIFFGetField(tif.get(), TIFFTAG_MAXSAMPLEVALUE, &max_sample) == 1 && max_sample > 0) {
    const std::uint8_t declared = bits_for(max_sample);
    if (declared < bps && max_sample == (1u << declared) - 1) r.bit_depth = declared;
  }

  const tmsize_t line = TIFFScanlineSize(tif.get());
  if (line < static_cast<tmsize_t>(w) * (bps / 8)) {
    throw Error(ErrorCode::kUnsupportedFormat, "TIFF scanline shorter than expected");
  }
  std::vector<std::uint8_t> buf(static_cast<std::size_t>(line));
  for (std::uint32_t y = 0; y < h; ++y) {
    if (TIFFReadScanline(tif.get(), buf.data(), y) < 0) {
      throw Error(ErrorCode::kIo, "failed reading TIFF row " + std::to_string(y));
    }
    auto* row = &r.pixels[static_cast<std::size_t>(y) * w];
    if (bps == 8) {
      std::copy_n(buf.data(), w, row);
    } else {
      // libtiff already swaps to host order.
      std::memcpy(row, buf.data(), static_cast<std::size_t>(w) * 2);
    }
  }
  r.validate();
  return r;
}

void save_tiff(const Raster& r, const std::filesystem::path& path) {
  install_quiet_handlers();
  TiffPtr tif(TIFFOpen(path.c_str(), "w"));
  if (!tif) throw Error(ErrorCode::kIo, "cannot write " + path.string());

  const std::uint16_t bps = r.bit_depth <= 8 ? 8 : 16;
  TIFFSetField(tif.get(), TIFFTAG_IMAGEWIDTH, r.width);
  TIFFSetField(tif.get(), TIFFTAG_IMAGELENGTH, r.height);
  TIFFSetField(tif.get(), TIFFTAG_BITSPERSAMPLE, bps);
  TIFFSetField(tif.get(), TIFFTAG_SAMPLESPERPIXEL, 1);
  TIFFSetField(tif.get(), TIFFTAG_SAMPLEFORMAT, SAMPLEFORMAT_UINT);
  TIFFSetField(tif.get(), TIFFTAG_PHOTOMETRIC, PHOTOMETRIC_MINISBLACK);
  TIFFSetField(tif.get(), TIFFTAG_PLANARCONFIG, PLANARCONFIG_CONTIG);
  TIFFSetField(tif.get(), TIFFTAG_COMPRESSION, COMPRESSION_NONE);
  TIFFSetField(tif.get(), TIFFTAG_ROWSPERSTRIP, TIFFDefaultStripSize(tif.get(), 0));
  if (r.bit_depth != bps) {
    TIFFSetField(tif.get(), TIFFTAG_MAXSAMPLEVALUE,
                 static_cast<std::uint16_t>((1u << r.bit_depth) - 1));
  }

  std::vector<std::uint8_t> buf(static_cast<std::size_t>(r.width) * (bps / 8));
  for (std::uint32_t y = 0; y < r.height; ++y) {
    const auto* row = &r.pixels[static_cast<std::size_t>(y) * r.width];
    if (bps == 8) {
      std::copy_n(row, r.width, buf.begin());
    } else {
      std::memcpy(buf.data(), row, buf.size());
    }
    if (TIFFWriteScanline(tif.get(), buf.data(), y) < 0) {
      throw Error(ErrorCode::kIo, "failed writing TIFF row " + std::to_string(y));
    }
  }
}

}  // namespace

std::vector<std::uint8_t> encode_raw(const Raster& r) {
  r.validate();
  ByteWriter out;
  out.bytes(kRawMagic);
  out.u32(r.width);
  out.u32(r.height);
  out.u8(r.bit_depth);
  for (auto v : r.pixels) out.u16(v);
  return out.take();
}

Raster decode_raw(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  auto magic = in.bytes(4);
  if (!std::equal(magic.begin(), magic.end(), kRawMagic.begin())) {
    throw Error(ErrorCode::kUnsupportedFormat, "missing AGRW magic");
  }
  const std::uint32_t w = in.u32();
  const std::uint32_t h = in.u32();
  const std::uint8_t depth = in.u8();
  if (w == 0 || h == 0 || depth == 0 || depth > 16) {
    throw Error(ErrorCode::kUnsupportedFormat, "bad AGRW header");
  }
  const std::uint64_t count = static_cast<std::uint64_t>(w) * h;
  if (in.remaining() != count * 2) {
    throw Error(ErrorCode::kUnsupportedFormat, "AGRW sample payload has wrong length");
  }
  Raster r(w, h, depth);
  for (auto& v : r.pixels) v = in.u16();
  r.validate();
  return r;
}

Raster load_raster(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::kIo, "no such file: " + path.string());
  }
  std::array<char, 4> head{};
  {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
    in.read(head.data(), head.size());
    if (in.gcount() < 4) throw Error(ErrorCode::kUnsupportedFormat, "file too short");
  }
  if (std::equal(head.begin(), head.end(), kRawMagic.begin())) {
    return decode_raw(read_file(path));
  }
  const bool tiff = (head[0] == 'I' && head[1] == 'I') || (head[0] == 'M' && head[1] == 'M');
  if (!tiff) throw Error(ErrorCode::kUnsupportedFormat, "not a TIFF or AGRW file");
  return load_tiff(path);
}

void save_raster(const Raster& r, const std::filesystem::path& path) {
  r.validate();
  if (has_raw_extension(path)) {
    const auto bytes = encode_raw(r);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::kIo, "short write to " + path.string());
    return;
  }
  save_tiff(r, path);
}

}  // namespace agcr
