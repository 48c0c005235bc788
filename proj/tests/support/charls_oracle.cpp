#include "charls_oracle.hpp"

#include <dlfcn.h>

#include <cstring>

namespace fixtures::charls {
namespace {

struct FrameInfo {
  std::uint32_t width;
  std::uint32_t height;
  std::int32_t bits_per_sample;
  std::int32_t component_count;
};

struct Api {
  void* lib = nullptr;
  void* (*enc_create)() = nullptr;
  void (*enc_destroy)(void*) = nullptr;
  int (*enc_set_frame)(void*, const FrameInfo*) = nullptr;
  int (*enc_estimate)(void*, std::size_t*) = nullptr;
  int (*enc_set_dest)(void*, void*, std::size_t) = nullptr;
  int (*enc_encode)(void*, const void*, std::size_t, std::uint32_t) = nullptr;
  int (*enc_written)(void*, std::size_t*) = nullptr;
  void* (*dec_create)() = nullptr;
  void (*dec_destroy)(void*) = nullptr;
  int (*dec_set_source)(void*, const void*, std::size_t) = nullptr;
  int (*dec_read_header)(void*) = nullptr;
  int (*dec_frame)(void*, FrameInfo*) = nullptr;
  int (*dec_size)(void*, std::uint32_t, std::size_t*) = nullptr;
  int (*dec_decode)(void*, void*, std::size_t, std::uint32_t) = nullptr;
};

template <class F>
bool bind(void* lib, const char* name, F& f) {
  f = reinterpret_cast<F>(dlsym(lib, name));
  return f != nullptr;
}

const Api* api() {
  static const Api* loaded = [] () -> const Api* {
    static Api a;
    a.lib = dlopen("libcharls.so.2", RTLD_NOW | RTLD_LOCAL);
    if (!a.lib) return nullptr;
    bool ok = bind(a.lib, "charls_jpegls_encoder_create", a.enc_create) &&
              bind(a.lib, "charls_jpegls_encoder_destroy", a.enc_destroy) &&
              bind(a.lib, "charls_jpegls_encoder_set_frame_info", a.enc_set_frame) &&
              bind(a.lib, "charls_jpegls_encoder_get_estimated_destination_size", a.enc_estimate) &&
              bind(a.lib, "charls_jpegls_encoder_set_destination_buffer", a.enc_set_dest) &&
              bind(a.lib, "charls_jpegls_encoder_encode_from_buffer", a.enc_encode) &&
              bind(a.lib, "charls_jpegls_encoder_get_bytes_written", a.enc_written) &&
              bind(a.lib, "charls_jpegls_decoder_create", a.dec_create) &&
              bind(a.lib, "charls_jpegls_decoder_destroy", a.dec_destroy) &&
              bind(a.lib, "charls_jpegls_decoder_set_source_buffer", a.dec_set_source) &&
              bind(a.lib, "charls_jpegls_decoder_read_header", a.dec_read_header) &&
              bind(a.lib, "charls_jpegls_decoder_get_frame_info", a.dec_frame) &&
              bind(a.lib, "charls_jpegls_decoder_get_destination_size", a.dec_size) &&
              bind(a.lib, "charls_jpegls_decoder_decode_to_buffer", a.dec_decode);
    return ok ? &a : nullptr;
  }();
  return loaded;
}

std::vector<std::uint8_t> to_bytes(const agcr::ImagePlane& img) {
  const bool wide = img.bit_depth > 8;
  std::vector<std::uint8_t> out(img.samples.size() * (wide ? 2 : 1));
  for (std::size_t i = 0; i < img.samples.size(); ++i) {
    if (wide) {
      out[2 * i] = static_cast<std::uint8_t>(img.samples[i]);
      out[2 * i + 1] = static_cast<std::uint8_t>(img.samples[i] >> 8);
    } else {
      out[i] = static_cast<std::uint8_t>(img.samples[i]);
    }
  }
  return out;
}

}  // namespace

bool available() { return api() != nullptr; }

std::optional<std::vector<std::uint8_t>> encode(const agcr::ImagePlane& img) {
  const Api* a = api();
  if (!a) return std::nullopt;
  void* e = a->enc_create();
  const FrameInfo fi{img.width, img.height, img.bit_depth, 1};
  std::optional<std::vector<std::uint8_t>> result;
  std::size_t cap = 0;
  if (a->enc_set_frame(e, &fi) == 0 && a->enc_estimate(e, &cap) == 0) {
    std::vector<std::uint8_t> out(cap);
    const auto src = to_bytes(img);
    std::size_t written = 0;
    if (a->enc_set_dest(e, out.data(), out.size()) == 0 && a->enc_encode(e, src.data(), src.size(), 0) == 0 &&
        a->enc_written(e, &written) == 0) {
      out.resize(written);
      result = std::move(out);
    }
  }
  a->enc_destroy(e);
  return result;
}

std::optional<agcr::ImagePlane> decode(const std::vector<std::uint8_t>& data) {
  const Api* a = api();
  if (!a) return std::nullopt;
  void* d = a->dec_create();
  std::optional<agcr::ImagePlane> result;
  FrameInfo fi{};
  std::size_t size = 0;
  if (a->dec_set_source(d, data.data(), data.size()) == 0 && a->dec_read_header(d) == 0 &&
      a->dec_frame(d, &fi) == 0 && a->dec_size(d, 0, &size) == 0) {
    std::vector<std::uint8_t> buf(size);
    if (a->dec_decode(d, buf.data(), buf.size(), 0) == 0) {
      agcr::ImagePlane img;
      img.width = fi.width;
      img.height = fi.height;
      img.bit_depth = static_cast<std::uint8_t>(fi.bits_per_sample);
      const bool wide = fi.bits_per_sample > 8;
      img.samples.resize(std::size_t{fi.width} * fi.height);
      for (std::size_t i = 0; i < img.samples.size(); ++i)
        img.samples[i] = wide ? static_cast<std::uint16_t>(buf[2 * i] | (buf[2 * i + 1] << 8)) : buf[i];
      result = std::move(img);
    }
  }
  a->dec_destroy(d);
  return result;
}

}  // namespace fixtures::charls
