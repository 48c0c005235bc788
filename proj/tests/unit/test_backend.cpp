#include <doctest.h>

#include <random>

#include "agcr/backend.hpp"
#include "agcr/error.hpp"
#include "charls_oracle.hpp"

using namespace agcr;

namespace {

ImagePlane make_plane(std::uint32_t w, std::uint32_t h, std::uint8_t depth, std::mt19937& rng, int style) {
  ImagePlane img{w, h, depth, std::vector<std::uint16_t>(std::size_t{w} * h)};
  const std::uint32_t maxv = (1u << depth) - 1;
  std::uniform_int_distribution<std::uint32_t> any(0, maxv);
  for (std::uint32_t y = 0; y < h; ++y)
    for (std::uint32_t x = 0; x < w; ++x) {
      std::uint32_t v = 0;
      switch (style) {
        case 0: v = any(rng); break;                                  // noise
        case 1: v = (x * 7 + y * 3) % (maxv + 1); break;              // ramps
        case 2: v = (x / 9 + y / 5) % 3 == 0 ? maxv : 0; break;        // flat runs
        case 3: v = rng() % 17 == 0 ? any(rng) : (y * maxv) / std::max(h, 1u); break;
        default: v = 0;
      }
      img.samples[std::size_t{y} * w + x] = static_cast<std::uint16_t>(v);
    }
  return img;
}

}  // namespace

TEST_CASE("byte codecs round-trip") {
  std::mt19937 rng(9);
  for (CodecId id : {CodecId::kStored, CodecId::kGeneralBwt, CodecId::kGeneralLz}) {
    CAPTURE(codec_name(id));
    for (std::size_t n : {0u, 1u, 17u, 4096u, 100000u}) {
      std::vector<std::uint8_t> raw(n);
      for (std::size_t i = 0; i < n; ++i) raw[i] = static_cast<std::uint8_t>(i % 7 == 0 ? rng() : i / 13);
      const auto packed = compress_bytes(id, raw);
      CHECK(decompress_bytes(id, packed, n) == raw);
      if (n > 0) CHECK_THROWS_AS(decompress_bytes(id, packed, n + 1), CorruptError);
    }
  }
}

TEST_CASE("byte codecs reject damaged payloads") {
  std::vector<std::uint8_t> raw(5000);
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = static_cast<std::uint8_t>(i * i);
  for (CodecId id : {CodecId::kGeneralBwt, CodecId::kGeneralLz}) {
    auto packed = compress_bytes(id, raw);
    packed[packed.size() / 2] ^= 0x5a;
    CHECK_THROWS_AS(decompress_bytes(id, packed, raw.size()), CorruptError);
    packed.resize(packed.size() / 3);
    CHECK_THROWS_AS(decompress_bytes(id, packed, raw.size()), CorruptError);
  }
}

TEST_CASE("sample packing") {
  const std::vector<std::uint16_t> v{0, 1, 255, 256, 65535};
  const auto wide = pack_samples(v, 16);
  CHECK(wide.size() == 10);
  CHECK(wide[3] == 1);
  CHECK(unpack_samples(wide, v.size(), 16) == v);
  const std::vector<std::uint16_t> narrow{3, 200, 9};
  CHECK(unpack_samples(pack_samples(narrow, 8), 3, 8) == narrow);
  CHECK_THROWS_AS(unpack_samples(wide, 4, 16), CorruptError);

  // Sub-byte widths, low bits first.
  const std::vector<std::uint16_t> two{1, 2, 3, 0, 3};
  const auto p2 = pack_samples(two, 2);
  REQUIRE(p2.size() == 2);
  CHECK(p2[0] == (1 | 2 << 2 | 3 << 4));
  CHECK(p2[1] == 3);
  CHECK(unpack_samples(p2, two.size(), 2) == two);
  CHECK(pack_samples(two, 3).size() == 3);
  CHECK(packed_sample_bytes(9, 1) == 2);
  CHECK(packed_sample_bytes(9, 4) == 5);
  std::mt19937 rng(3);
  for (std::uint8_t bits = 1; bits <= 16; ++bits)
    for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 1000u}) {
      std::vector<std::uint16_t> s(n);
      for (auto& x : s) x = static_cast<std::uint16_t>(rng() & ((1u << bits) - 1));
      CHECK(unpack_samples(pack_samples(s, bits), n, bits) == s);
    }
  CHECK_THROWS_AS(unpack_samples(p2, 9, 2), CorruptError);
}

TEST_CASE("JPEG-LS lossless round trip") {
  std::mt19937 rng(31);
  for (int depth = 2; depth <= 16; ++depth)
    for (int style = 0; style < 4; ++style) {
      CAPTURE(depth);
      CAPTURE(style);
      const std::uint32_t w = 1 + rng() % 70, h = 1 + rng() % 40;
      const auto img = make_plane(w, h, static_cast<std::uint8_t>(depth), rng, style);
      const auto code = jpegls_encode(img);
      CHECK(jpegls_decode(code, w, h, static_cast<std::uint8_t>(depth)) == img);
    }
  SUBCASE("constant images compress to a few bytes") {
    ImagePlane img{256, 256, 8, std::vector<std::uint16_t>(65536, 77)};
    const auto code = jpegls_encode(img);
    CHECK(code.size() < 200);
    CHECK(jpegls_decode(code, 256, 256, 8) == img);
  }
  SUBCASE("one-bit planes are coded with two bits") {
    ImagePlane img{5, 3, 1, {0, 1, 1, 0, 1, 0, 0, 0, 1, 1, 1, 1, 0, 1, 0}};
    const auto back = jpegls_decode(jpegls_encode(img), 5, 3, 1);
    CHECK(back.samples == img.samples);
  }
}

TEST_CASE("JPEG-LS rejects bad input") {
  std::mt19937 rng(4);
  const auto img = make_plane(40, 30, 12, rng, 3);
  auto code = jpegls_encode(img);
  CHECK_THROWS_AS(jpegls_decode(code, 41, 30, 12), CorruptError);
  CHECK_THROWS_AS(jpegls_decode(std::span(code).first(code.size() / 2), 40, 30, 12), CorruptError);
  CHECK_THROWS_AS(jpegls_decode({}, 40, 30, 12), CorruptError);
  ImagePlane huge{70000, 1, 8, std::vector<std::uint16_t>(70000)};
  CHECK_THROWS_AS(jpegls_encode(huge), Error);
  // Random damage must either decode to something or throw, never crash.
  for (int i = 0; i < 200; ++i) {
    auto bad = code;
    bad[rng() % bad.size()] ^= static_cast<std::uint8_t>(1 + rng() % 255);
    try {
      (void)jpegls_decode(bad, 40, 30, 12);
    } catch (const Error&) {
    }
  }
}

TEST_CASE("JPEG-LS interoperates with CharLS") {
  if (!fixtures::charls::available()) {
    MESSAGE("libcharls.so.2 not found; interop skipped");
    return;
  }
  std::mt19937 rng(57);
  for (int depth : {2, 5, 8, 10, 12, 16})
    for (int style = 0; style < 4; ++style) {
      CAPTURE(depth);
      CAPTURE(style);
      const std::uint32_t w = 3 + rng() % 60, h = 2 + rng() % 40;
      const auto img = make_plane(w, h, static_cast<std::uint8_t>(depth), rng, style);
      const auto ours = jpegls_encode(img);
      const auto theirs_decoded = fixtures::charls::decode(ours);
      REQUIRE(theirs_decoded.has_value());
      CHECK(theirs_decoded->samples == img.samples);
      const auto theirs = fixtures::charls::encode(img);
      REQUIRE(theirs.has_value());
      CHECK(jpegls_decode(*theirs, w, h, static_cast<std::uint8_t>(depth)) == img);
      // Same algorithm and parameters give the same scan size.
      CHECK(ours.size() <= theirs->size() + 32);
    }
}

TEST_CASE("JPEG 2000 lossy backend") {
  std::mt19937 rng(8);
  const auto img = make_plane(64, 48, 16, rng, 1);
  const auto lossless_ish = j2k_encode(img, 1.0f);
  const auto small = j2k_encode(img, 40.0f);
  CHECK(small.size() < lossless_ish.size());
  CHECK(small.size() <= std::size_t{64} * 48 * 2 / 40 + 256);
  const auto back = j2k_decode(small, 64, 48, 16);
  CHECK(back.samples.size() == img.samples.size());
  CHECK_THROWS_AS(j2k_decode(small, 63, 48, 16), CorruptError);
  CHECK_THROWS_AS(j2k_encode(img, 0.5f), Error);
  ImagePlane tiny{1, 1, 8, {200}};
  CHECK(j2k_decode(j2k_encode(tiny, 1.0f), 1, 1, 8).samples.size() == 1);
}

TEST_CASE("backend table") {
  CHECK(backend_info(CodecId::kPredictiveImage).image_2d);
  CHECK_FALSE(backend_info(CodecId::kLossyWavelet).lossless);
  CHECK(is_known_codec(4));
  CHECK_FALSE(is_known_codec(5));
}
