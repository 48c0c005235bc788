#include "agcr/backend.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include <bzlib.h>
#include <lzma.h>
#include <openjpeg.h>

#include "agcr/error.hpp"

extern "C" void bz_internal_error(int) { std::abort(); }

namespace agcr {
namespace {

constexpr std::uint64_t kLzmaMemLimit = 256ull << 20;

const BackendInfo kBackends[] = {
    {CodecId::kStored, "stored", true, false, true},
    {CodecId::kGeneralBwt, "bzip2", true, false, true},
    {CodecId::kGeneralLz, "xz", true, false, true},
    {CodecId::kPredictiveImage, "jpeg-ls", true, true, true},
    {CodecId::kLossyWavelet, "jpeg2000", false, true, true},
};

[[noreturn]] void backend_fail(CodecId id, const std::string& what) {
  throw Error(ErrorCode::kBackend, std::string(codec_name(id)) + ": " + what);
}

std::vector<std::uint8_t> bzip2_compress(std::span<const std::uint8_t> raw) {
  if (raw.size() > UINT_MAX / 2) backend_fail(CodecId::kGeneralBwt, "input too large");
  unsigned cap = static_cast<unsigned>(raw.size() + raw.size() / 100 + 600);
  std::vector<std::uint8_t> out(cap);
  char dummy = 0;
  char* src = raw.empty() ? &dummy : const_cast<char*>(reinterpret_cast<const char*>(raw.data()));
  const int rc = BZ2_bzBuffToBuffCompress(reinterpret_cast<char*>(out.data()), &cap, src,
                                          static_cast<unsigned>(raw.size()), 9, 0, 0);
  if (rc != BZ_OK) backend_fail(CodecId::kGeneralBwt, "compression failed (" + std::to_string(rc) + ")");
  out.resize(cap);
  return out;
}

std::vector<std::uint8_t> bzip2_decompress(std::span<const std::uint8_t> payload, std::uint64_t raw_len) {
  if (raw_len > UINT_MAX || payload.size() > UINT_MAX)
    throw CorruptError("bzip2 block length out of range", 0);
  std::vector<std::uint8_t> out(static_cast<std::size_t>(raw_len));
  unsigned len = static_cast<unsigned>(raw_len);
  // A zero-capacity destination is valid for an empty stream; give bzip2 a
  // non-null pointer regardless.
  char dummy = 0;
  char* dst = out.empty() ? &dummy : reinterpret_cast<char*>(out.data());
  char* src = payload.empty() ? &dummy : const_cast<char*>(reinterpret_cast<const char*>(payload.data()));
  const int rc = BZ2_bzBuffToBuffDecompress(dst, &len, src,
                                            static_cast<unsigned>(payload.size()), 0, 0);
  if (rc != BZ_OK || len != raw_len)
    throw CorruptError("bzip2 payload is damaged (" + std::to_string(rc) + ")", 0);
  return out;
}

std::vector<std::uint8_t> xz_compress(std::span<const std::uint8_t> raw) {
  std::vector<std::uint8_t> out(lzma_stream_buffer_bound(raw.size()));
  std::size_t pos = 0;
  const lzma_ret rc = lzma_easy_buffer_encode(6, LZMA_CHECK_CRC32, nullptr, raw.data(), raw.size(),
                                              out.data(), &pos, out.size());
  if (rc != LZMA_OK) backend_fail(CodecId::kGeneralLz, "compression failed (" + std::to_string(rc) + ")");
  out.resize(pos);
  return out;
}

std::vector<std::uint8_t> xz_decompress(std::span<const std::uint8_t> payload, std::uint64_t raw_len) {
  std::vector<std::uint8_t> out(static_cast<std::size_t>(raw_len));
  std::uint64_t memlimit = kLzmaMemLimit;
  std::size_t in_pos = 0, out_pos = 0;
  std::uint8_t dummy = 0;
  const lzma_ret rc = lzma_stream_buffer_decode(&memlimit, 0, nullptr, payload.data(), &in_pos, payload.size(),
                                                out.empty() ? &dummy : out.data(), &out_pos, out.size());
  if (rc != LZMA_OK || out_pos != raw_len || in_pos != payload.size())
    throw CorruptError("xz payload is damaged (" + std::to_string(rc) + ")", 0);
  return out;
}

// OpenJPEG memory streams.
struct MemStream {
  std::vector<std::uint8_t>* out = nullptr;
  const std::uint8_t* in = nullptr;
  std::size_t size = 0;
  std::size_t pos = 0;
};

OPJ_SIZE_T mem_read(void* buf, OPJ_SIZE_T n, void* user) {
  auto* m = static_cast<MemStream*>(user);
  if (m->pos >= m->size) return static_cast<OPJ_SIZE_T>(-1);
  const std::size_t k = std::min<std::size_t>(n, m->size - m->pos);
  std::memcpy(buf, m->in + m->pos, k);
  m->pos += k;
  return k;
}

OPJ_SIZE_T mem_write(void* buf, OPJ_SIZE_T n, void* user) {
  auto* m = static_cast<MemStream*>(user);
  if (m->out->size() < m->pos + n) m->out->resize(m->pos + n);
  std::memcpy(m->out->data() + m->pos, buf, n);
  m->pos += n;
  return n;
}

OPJ_OFF_T mem_skip(OPJ_OFF_T n, void* user) {
  auto* m = static_cast<MemStream*>(user);
  if (n < 0 && static_cast<std::size_t>(-n) > m->pos) return -1;
  const std::size_t limit = m->out ? SIZE_MAX : m->size;
  if (n > 0 && m->pos + static_cast<std::size_t>(n) > limit) {
    m->pos = m->size;
    return -1;
  }
  m->pos = static_cast<std::size_t>(static_cast<OPJ_OFF_T>(m->pos) + n);
  return n;
}

OPJ_BOOL mem_seek(OPJ_OFF_T off, void* user) {
  auto* m = static_cast<MemStream*>(user);
  if (off < 0) return OPJ_FALSE;
  if (!m->out && static_cast<std::size_t>(off) > m->size) return OPJ_FALSE;
  m->pos = static_cast<std::size_t>(off);
  return OPJ_TRUE;
}

void opj_quiet(const char*, void*) {}

struct OpjGuard {
  opj_codec_t* codec = nullptr;
  opj_stream_t* stream = nullptr;
  opj_image_t* image = nullptr;
  ~OpjGuard() {
    if (stream) opj_stream_destroy(stream);
    if (codec) opj_destroy_codec(codec);
    if (image) opj_image_destroy(image);
  }
};

opj_stream_t* make_stream(MemStream& m, bool input) {
  opj_stream_t* s = opj_stream_create(OPJ_J2K_STREAM_CHUNK_SIZE, input ? OPJ_TRUE : OPJ_FALSE);
  if (!s) return nullptr;
  opj_stream_set_user_data(s, &m, nullptr);
  if (input) {
    opj_stream_set_user_data_length(s, m.size);
    opj_stream_set_read_function(s, mem_read);
  } else {
    opj_stream_set_write_function(s, mem_write);
  }
  opj_stream_set_skip_function(s, mem_skip);
  opj_stream_set_seek_function(s, mem_seek);
  return s;
}

void quiet_codec(opj_codec_t* c) {
  opj_set_info_handler(c, opj_quiet, nullptr);
  opj_set_warning_handler(c, opj_quiet, nullptr);
  opj_set_error_handler(c, opj_quiet, nullptr);
}

}  // namespace

const BackendInfo& backend_info(CodecId id) {
  const auto i = static_cast<std::size_t>(id);
  if (i >= std::size(kBackends)) throw Error(ErrorCode::kInvalidArgument, "unknown codec id");
  return kBackends[i];
}

bool is_known_codec(std::uint8_t id) noexcept { return id < std::size(kBackends); }

std::string_view codec_name(CodecId id) noexcept {
  const auto i = static_cast<std::size_t>(id);
  return i < std::size(kBackends) ? kBackends[i].name : std::string_view("unknown");
}

std::vector<std::uint8_t> compress_bytes(CodecId id, std::span<const std::uint8_t> raw) {
  switch (id) {
    case CodecId::kStored: return {raw.begin(), raw.end()};
    case CodecId::kGeneralBwt: return bzip2_compress(raw);
    case CodecId::kGeneralLz: return xz_compress(raw);
    default: throw Error(ErrorCode::kInvalidArgument, "not a byte codec: " + std::string(codec_name(id)));
  }
}

std::vector<std::uint8_t> decompress_bytes(CodecId id, std::span<const std::uint8_t> payload,
                                           std::uint64_t raw_len) {
  switch (id) {
    case CodecId::kStored:
      if (payload.size() != raw_len) throw CorruptError("stored block length mismatch", 0);
      return {payload.begin(), payload.end()};
    case CodecId::kGeneralBwt: return bzip2_decompress(payload, raw_len);
    case CodecId::kGeneralLz: return xz_decompress(payload, raw_len);
    default: throw CorruptError("codec id is not a byte codec", 0);
  }
}

std::vector<std::uint8_t> j2k_encode(const ImagePlane& img, float ratio) {
  if (img.width == 0 || img.height == 0 || img.samples.size() != std::size_t{img.width} * img.height)
    throw Error(ErrorCode::kInvalidArgument, "jpeg2000: bad image geometry");
  if (!(ratio >= 1.0f) || !std::isfinite(ratio))
    throw Error(ErrorCode::kInvalidArgument, "jpeg2000: ratio must be >= 1");
  opj_cparameters_t params;
  opj_set_default_encoder_parameters(&params);
  params.tcp_numlayers = 1;
  params.tcp_rates[0] = ratio;
  params.cp_disto_alloc = 1;
  params.irreversible = 1;
  const std::uint32_t min_side = std::min(img.width, img.height);
  int numres = 1;
  while (numres < 6 && (1u << numres) <= min_side) ++numres;
  params.numresolution = numres;

  opj_image_cmptparm_t cp;
  std::memset(&cp, 0, sizeof cp);
  cp.dx = cp.dy = 1;
  cp.w = img.width;
  cp.h = img.height;
  cp.prec = std::max<std::uint32_t>(img.bit_depth, 1);
  cp.sgnd = 0;
  OpjGuard g;
  g.image = opj_image_create(1, &cp, OPJ_CLRSPC_GRAY);
  if (!g.image) backend_fail(CodecId::kLossyWavelet, "image allocation failed");
  g.image->x0 = 0;
  g.image->y0 = 0;
  g.image->x1 = img.width;
  g.image->y1 = img.height;
  for (std::size_t i = 0; i < img.samples.size(); ++i) g.image->comps[0].data[i] = img.samples[i];

  g.codec = opj_create_compress(OPJ_CODEC_J2K);
  quiet_codec(g.codec);
  if (!opj_setup_encoder(g.codec, &params, g.image)) backend_fail(CodecId::kLossyWavelet, "encoder setup failed");
  std::vector<std::uint8_t> out;
  MemStream m;
  m.out = &out;
  g.stream = make_stream(m, false);
  if (!g.stream || !opj_start_compress(g.codec, g.image, g.stream) || !opj_encode(g.codec, g.stream) ||
      !opj_end_compress(g.codec, g.stream))
    backend_fail(CodecId::kLossyWavelet, "encoding failed");
  return out;
}

ImagePlane j2k_decode(std::span<const std::uint8_t> data, std::uint32_t width, std::uint32_t height,
                      std::uint8_t bit_depth) {
  OpjGuard g;
  MemStream m;
  m.in = data.data();
  m.size = data.size();
  g.codec = opj_create_decompress(OPJ_CODEC_J2K);
  quiet_codec(g.codec);
  opj_dparameters_t dp;
  opj_set_default_decoder_parameters(&dp);
  if (!opj_setup_decoder(g.codec, &dp)) backend_fail(CodecId::kLossyWavelet, "decoder setup failed");
  g.stream = make_stream(m, true);
  if (!g.stream || !opj_read_header(g.stream, g.codec, &g.image))
    throw CorruptError("jpeg2000 header is damaged", 0);
  if (g.image->numcomps != 1 || g.image->x1 - g.image->x0 != width || g.image->y1 - g.image->y0 != height ||
      g.image->x0 != 0 || g.image->y0 != 0)
    throw CorruptError("jpeg2000 geometry does not match", 0);
  if (!opj_decode(g.codec, g.stream, g.image) || !opj_end_decompress(g.codec, g.stream))
    throw CorruptError("jpeg2000 codestream is damaged", 0);
  const opj_image_comp_t& c = g.image->comps[0];
  if (c.w != width || c.h != height || !c.data) throw CorruptError("jpeg2000 component geometry does not match", 0);
  ImagePlane out;
  out.width = width;
  out.height = height;
  out.bit_depth = bit_depth;
  out.samples.resize(std::size_t{width} * height);
  const int maxv = (1 << std::max<int>(bit_depth, 1)) - 1;
  for (std::size_t i = 0; i < out.samples.size(); ++i)
    out.samples[i] = static_cast<std::uint16_t>(std::clamp<int>(c.data[i], 0, maxv));
  return out;
}

unsigned sample_width(std::uint8_t value_bits) noexcept {
  if (value_bits <= 1) return 1;
  if (value_bits <= 2) return 2;
  if (value_bits <= 4) return 4;
  return value_bits <= 8 ? 8 : 16;
}

std::size_t packed_sample_bytes(std::size_t count, std::uint8_t value_bits) noexcept {
  const unsigned bw = sample_width(value_bits);
  return bw == 16 ? 2 * count : (count * bw + 7) / 8;
}

std::vector<std::uint8_t> pack_samples(std::span<const std::uint16_t> values, std::uint8_t value_bits) {
  const unsigned bw = sample_width(value_bits);
  std::vector<std::uint8_t> out(packed_sample_bytes(values.size(), value_bits), 0);
  if (bw == 16) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      out[i] = static_cast<std::uint8_t>(values[i] >> 8);
      out[values.size() + i] = static_cast<std::uint8_t>(values[i]);
    }
    return out;
  }
  // Low bits first within each byte.
  const unsigned per = 8 / bw;
  for (std::size_t i = 0; i < values.size(); ++i)
    out[i / per] |= static_cast<std::uint8_t>((values[i] & ((1u << bw) - 1)) << (bw * (i % per)));
  return out;
}

std::vector<std::uint16_t> unpack_samples(std::span<const std::uint8_t> bytes, std::size_t count,
                                          std::uint8_t value_bits) {
  if (bytes.size() != packed_sample_bytes(count, value_bits))
    throw CorruptError("sample block has the wrong length", 0);
  const unsigned bw = sample_width(value_bits);
  std::vector<std::uint16_t> out(count);
  if (bw == 16) {
    for (std::size_t i = 0; i < count; ++i)
      out[i] = static_cast<std::uint16_t>((bytes[i] << 8) | bytes[count + i]);
    return out;
  }
  const unsigned per = 8 / bw;
  for (std::size_t i = 0; i < count; ++i)
    out[i] = static_cast<std::uint16_t>((bytes[i / per] >> (bw * (i % per))) & ((1u << bw) - 1));
  return out;
}

}  // namespace agcr
