#include <doctest.h>

#include <random>

#include "agcr/codec.hpp"
#include "agcr/decode.hpp"
#include "agcr/error.hpp"
#include "fixtures.hpp"

using namespace agcr;

namespace {

std::vector<std::uint8_t> sample_container(std::uint32_t seed, Strategy s) {
  std::mt19937 rng(seed);
  const Raster r = fixtures::sparse_blob_raster(rng, 48, 40, 2, 0.1);
  EncodeConfig cfg;
  cfg.strategy = s;
  cfg.bins = 3;
  cfg.sigma = 0.0;
  return encode(r, cfg).bytes;
}

}  // namespace

TEST_CASE("empty shape stream decodes to the background") {
  const ToleranceRaster t = reconstruct_tolerance({}, 7, 5, 0, 4);
  CHECK(t == ToleranceRaster(7, 5, 0));
  CHECK(reconstruct_tolerance({}, 7, 5, 2, 1) == ToleranceRaster(7, 5, 2));
}

TEST_CASE("decode is independent of the thread count") {
  std::mt19937 rng(3);
  std::vector<Raster> corpus;
  for (int i = 0; i < 8; ++i) corpus.push_back(fixtures::random_raster(rng, 10 + rng() % 60, 10 + rng() % 60));
  for (auto& [n, r] : fixtures::adversarial_rasters()) corpus.push_back(r);
  corpus.push_back(fixtures::sparse_blob_raster(rng, 80, 64, 3, 0.08));
  for (const Raster& r : corpus)
    for (Strategy s : {Strategy::kInPlace, Strategy::kBinned, Strategy::kMixed}) {
      EncodeConfig cfg;
      cfg.strategy = s;
      const auto bytes = encode(r, cfg).bytes;
      const Raster one = decode_container(bytes, DecodeOptions{1, false});
      CHECK(one == r);
      CHECK(decode_container(bytes, DecodeOptions{2, false}) == one);
      CHECK(decode_container(bytes, DecodeOptions{8, false}) == one);
      const Container c = parse_container(bytes);
      CHECK(decode_tolerance(c, 1) == decode_tolerance(c, 8));
    }
}

TEST_CASE("extract_bin restricts the full decode") {
  for (Strategy s : {Strategy::kBinned, Strategy::kMixed}) {
    for (std::uint32_t seed = 1; seed <= 4; ++seed) {
      const auto bytes = sample_container(seed, s);
      const Container c = parse_container(bytes);
      const Raster full = decode_container(bytes);
      const ToleranceRaster t = decode_tolerance(c, 1);
      for (std::uint32_t l = 0; l < c.header.k; ++l) {
        const Raster part = extract_bin(bytes, l, 2);
        REQUIRE(part.pixels.size() == full.pixels.size());
        for (std::size_t i = 0; i < part.pixels.size(); ++i)
          CHECK(part.pixels[i] == (t.cells[i] == l ? full.pixels[i] : 0));
      }
      CHECK_THROWS_AS(extract_bin(bytes, c.header.k), Error);
    }
  }
  const auto inplace = sample_container(1, Strategy::kInPlace);
  try {
    extract_bin(inplace, 0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnsupportedOperation);
  }
}

TEST_CASE("damaged containers fail cleanly") {
  const auto good = sample_container(5, Strategy::kMixed);
  REQUIRE(good.size() > kHeaderSize);

  auto bad = good;
  bad[0] = 'X';
  CHECK_THROWS_AS(decode_container(bad), CorruptError);

  bad = good;
  bad[4] = 9;  // version
  CHECK_THROWS_AS(decode_container(bad), CorruptError);

  for (std::size_t n : {std::size_t{0}, std::size_t{3}, kHeaderSize - 1, kHeaderSize, good.size() / 2, good.size() - 1}) {
    const std::vector<std::uint8_t> cut(good.begin(), good.begin() + static_cast<std::ptrdiff_t>(n));
    CHECK_THROWS_AS(decode_container(cut), CorruptError);
  }

  auto longer = good;
  longer.push_back(0);
  CHECK_THROWS_AS(decode_container(longer), CorruptError);

  // Last payload byte flipped: caught by the codec or the output checksum.
  bad = good;
  bad.back() ^= 0x40;
  CHECK_THROWS_AS(decode_container(bad), Error);
  CHECK_NOTHROW(decode_container(good));
}

TEST_CASE("skip_checksum only bypasses the output comparison") {
  std::mt19937 rng(2);
  const Raster r = fixtures::random_raster(rng, 20, 20);
  EncodeConfig cfg;
  cfg.strategy = Strategy::kInPlace;
  auto bytes = encode(r, cfg).bytes;
  Container c = parse_container(bytes);
  c.header.output_crc ^= 1;
  const auto tampered = write_container(c);
  CHECK_THROWS_AS(decode_container(tampered), CorruptError);
  CHECK(decode_container(tampered, DecodeOptions{1, true}) == r);
}

TEST_CASE("mutated containers never crash") {
  std::mt19937 rng(1234);
  std::vector<std::vector<std::uint8_t>> seeds;
  for (Strategy s : {Strategy::kInPlace, Strategy::kBinned, Strategy::kMixed}) seeds.push_back(sample_container(9, s));
  int clean = 0, ok = 0;
  for (int i = 0; i < 600; ++i) {
    auto m = seeds[static_cast<std::size_t>(i) % seeds.size()];
    const int edits = 1 + static_cast<int>(rng() % 4);
    for (int e = 0; e < edits; ++e) {
      const std::size_t at = rng() % m.size();
      switch (rng() % 3) {
        case 0: m[at] = static_cast<std::uint8_t>(rng()); break;
        case 1: m[at] ^= static_cast<std::uint8_t>(1u << (rng() % 8)); break;
        default: m.resize(at + 1); break;
      }
    }
    try {
      decode_container(m, DecodeOptions{1, false});
      ++ok;
    } catch (const Error&) {
      ++clean;
    }
  }
  CHECK(clean + ok == 600);
  CHECK(clean > 500);
}
