#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "agcr/codec.hpp"
#include "agcr/decode.hpp"
#include "agcr/error.hpp"
#include "fixtures.hpp"

using namespace agcr;

namespace {

std::vector<std::uint16_t> raw_samples(const EncodedBin& b, std::size_t n) {
  return unpack_samples(decompress_bytes(b.descriptor.codec, b.payload, b.descriptor.raw_len), n,
                        b.descriptor.value_bits);
}

PixelMask mask_of(const fixtures::PixelSet& px) {
  BoundingBox box;
  for (auto [x, y] : px) box.expand(Vertex{x, y});
  PixelMask m(box);
  for (auto [x, y] : px) m.set({x, y});
  return m;
}

// Left half label 0, right half label 1.
Raster split_template(std::uint32_t w, std::uint32_t h) {
  Raster t(w, h, 8, 0);
  for (std::uint32_t y = 0; y < h; ++y)
    for (std::uint32_t x = w / 2; x < w; ++x) t.at(x, y) = 1;
  return t;
}

Raster two_level(std::mt19937& rng, std::uint32_t w, std::uint32_t h) {
  Raster r(w, h, 16, 0);
  std::uniform_int_distribution<int> lo(10, 40), hi(5000, 5100);
  for (std::uint32_t y = 0; y < h; ++y)
    for (std::uint32_t x = 0; x < w; ++x) {
      const bool in = x > w / 4 && x < 3 * w / 4 && y > h / 3 && y < 2 * h / 3;
      r.at(x, y) = static_cast<std::uint16_t>(in ? hi(rng) : lo(rng));
    }
  return r;
}

}  // namespace

TEST_CASE("loss spec parsing") {
  CHECK(parse_loss_spec("lossless") == LossSpec{});
  CHECK(parse_loss_spec("mean").mode == LossMode::kMean);
  const auto r = parse_loss_spec("30");
  CHECK(r.mode == LossMode::kRatio);
  CHECK(r.ratio == doctest::Approx(30.0));
  CHECK(parse_loss_spec("2.5").ratio == doctest::Approx(2.5));
  for (const char* bad : {"", "0.5", "-3", "abc", "30x", "nan", "inf"})
    CHECK_THROWS_AS(parse_loss_spec(bad), Error);
}

TEST_CASE("binned bins store offsets from the bin minimum") {
  const std::vector<std::uint16_t> v{100, 101, 100};
  for (CodecId id : {CodecId::kGeneralBwt, CodecId::kGeneralLz, CodecId::kStored}) {
    const EncodedBin b = encode_bin_binned(v, id);
    CHECK(b.offset == 100);
    CHECK(b.descriptor.layout == Layout::kRasterOrder);
    CHECK(raw_samples(b, 3) == std::vector<std::uint16_t>{0, 1, 0});
    CHECK(decode_bin_binned(b, 3) == v);
  }

  const std::vector<std::uint16_t> flat(4096, 777);
  const EncodedBin b = encode_bin_binned(flat, CodecId::kGeneralBwt);
  CHECK(b.offset == 777);
  CHECK(b.payload.size() < 64);
  CHECK(decode_bin_binned(b, flat.size()) == flat);

  CHECK_THROWS_AS(encode_bin_binned({}, CodecId::kGeneralBwt), Error);

  std::mt19937 rng(11);
  for (int i = 0; i < 60; ++i) {
    std::vector<std::uint16_t> r(1 + rng() % 3000);
    const std::uint32_t span = 1u << (rng() % 17);
    const std::uint32_t base = rng() % 40000;
    for (auto& x : r) x = static_cast<std::uint16_t>(std::min<std::uint32_t>(65535, base + rng() % span));
    for (CodecId id : {CodecId::kGeneralBwt, CodecId::kGeneralLz})
      CHECK(decode_bin_binned(encode_bin_binned(r, id), r.size()) == r);
  }
}

TEST_CASE("cropped bins pad non-members with zero") {
  Raster values(12, 10, 16, 0);
  std::mt19937 rng(5);
  for (auto& p : values.pixels) p = static_cast<std::uint16_t>(300 + rng() % 50);

  SUBCASE("full rectangle") {
    fixtures::PixelSet px;
    for (int y = 2; y <= 6; ++y)
      for (int x = 3; x <= 9; ++x) px.insert({x, y});
    const PixelMask m = mask_of(px);
    const EncodedBin b = encode_bin_cropped(values, m);
    CHECK(b.descriptor.layout == Layout::kCrop);
    CHECK(b.descriptor.bbox.width() == 7);
    CHECK(b.descriptor.bbox.height() == 5);
    const ImagePlane crop = jpegls_decode(b.payload, 7, 5, b.descriptor.value_bits);
    for (int y = 2; y <= 6; ++y)
      for (int x = 3; x <= 9; ++x)
        CHECK(crop.samples[static_cast<std::size_t>(y - 2) * 7 + (x - 3)] + b.offset ==
              values.at(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y)));
  }

  SUBCASE("L shape") {
    const auto region = fixtures::region_from_art({
        "#....",
        "#....",
        "#....",
        "#####",
    });
    const PixelMask m = mask_of(fixtures::pixel_set(region));
    const EncodedBin b = encode_bin_cropped(values, m);
    const auto& box = b.descriptor.bbox;
    const auto bw = static_cast<std::uint32_t>(box.width()), bh = static_cast<std::uint32_t>(box.height());
    const ImagePlane crop = jpegls_decode(b.payload, bw, bh, b.descriptor.value_bits);
    std::vector<std::uint16_t> expect;
    for (std::int32_t y = box.y0; y <= box.y1; ++y)
      for (std::int32_t x = box.x0; x <= box.x1; ++x) {
        const auto s = crop.samples[static_cast<std::size_t>(y - box.y0) * bw + static_cast<std::size_t>(x - box.x0)];
        if (m.test(x, y)) {
          expect.push_back(values.at(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y)));
        } else {
          CHECK(s == 0);
        }
      }
    CHECK(decode_bin_cropped(b, m) == expect);
  }

  SUBCASE("degenerate") {
    CHECK_THROWS_AS(encode_bin_cropped(values, PixelMask{}), Error);
  }
}

TEST_CASE("cropped bins round-trip random regions") {
  std::mt19937 rng(21);
  for (int i = 0; i < 80; ++i) {
    const auto region = fixtures::random_region(rng, 40);
    const PixelMask m = mask_of(fixtures::pixel_set(region));
    const auto& box = m.box();
    Raster values(static_cast<std::uint32_t>(box.x1 + 3), static_cast<std::uint32_t>(box.y1 + 2), 16, 0);
    const std::uint32_t span = 1u << (1 + rng() % 15);
    for (auto& p : values.pixels) p = static_cast<std::uint16_t>(rng() % span);
    std::vector<std::uint16_t> members;
    for (std::int32_t y = box.y0; y <= box.y1; ++y)
      for (std::int32_t x = box.x0; x <= box.x1; ++x)
        if (m.test(x, y)) members.push_back(values.at(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y)));
    for (CodecId id : {CodecId::kPredictiveImage, CodecId::kGeneralBwt})
      CHECK(decode_bin_cropped(encode_bin_cropped(values, m, id), m) == members);
  }
}

TEST_CASE("in-place payloads") {
  const Raster flat(64, 64, 16, 4242);
  for (CodecId id : {CodecId::kGeneralBwt, CodecId::kGeneralLz, CodecId::kPredictiveImage}) {
    const EncodedBin b = encode_inplace(flat, id);
    CHECK(b.payload.size() < 200);
    CHECK(decode_inplace(b, 64, 64).pixels == flat.pixels);
  }
  std::mt19937 rng(8);
  for (int i = 0; i < 20; ++i) {
    const Raster r = fixtures::random_raster(rng, 1 + rng() % 70, 1 + rng() % 70);
    for (CodecId id : {CodecId::kGeneralBwt, CodecId::kGeneralLz, CodecId::kPredictiveImage})
      CHECK(decode_inplace(encode_inplace(r, id), r.width, r.height).pixels == r.pixels);
  }
}

TEST_CASE("strategy selection") {
  auto cand = [](std::string n, Strategy s, std::size_t size) {
    return Candidate{std::move(n), s, std::vector<std::uint8_t>(size, 0)};
  };
  CHECK_THROWS_AS(select_strategy({}), Error);
  {
    const std::vector<Candidate> one{cand("a", Strategy::kInPlace, 10)};
    CHECK(select_strategy(one).name == "a");
  }
  {
    const std::vector<Candidate> two{cand("a", Strategy::kInPlace, 100), cand("b", Strategy::kBinned, 90)};
    CHECK(select_strategy(two).name == "b");
  }
  {
    const std::vector<Candidate> tie{cand("i", Strategy::kInPlace, 50), cand("b", Strategy::kBinned, 50),
                                     cand("m", Strategy::kMixed, 50), cand("m2", Strategy::kMixed, 50)};
    CHECK(select_strategy(tie).name == "m");
    const std::vector<Candidate> tie2{cand("i", Strategy::kInPlace, 50), cand("b", Strategy::kBinned, 50)};
    CHECK(select_strategy(tie2).name == "b");
    const std::vector<Candidate> tie3{cand("i", Strategy::kInPlace, 50), cand("j", Strategy::kInPlace, 50)};
    CHECK(select_strategy(tie3).name == "i");
  }
}

TEST_CASE("constant image") {
  const Raster flat(64, 64, 16, 1234);
  const EncodeResult e = encode(flat);
  CHECK(e.report.k == 1);
  CHECK(e.bytes.size() < flat.pixels.size() * 2);
  CHECK(decode_container(e.bytes) == flat);
}

TEST_CASE("round trip per strategy") {
  std::mt19937 rng(99);
  std::vector<Raster> corpus;
  for (int i = 0; i < 25; ++i) corpus.push_back(fixtures::random_raster(rng, 8 + rng() % 57, 8 + rng() % 57));
  for (auto& [name, r] : fixtures::adversarial_rasters()) corpus.push_back(r);
  corpus.push_back(two_level(rng, 48, 40));
  for (const Raster& r : corpus)
    for (Strategy s : {Strategy::kInPlace, Strategy::kBinned, Strategy::kMixed, Strategy::kAuto}) {
      EncodeConfig cfg;
      cfg.strategy = s;
      cfg.threads = 2;
      const EncodeResult e = encode(r, cfg);
      if (s != Strategy::kAuto) CHECK(e.report.strategy == s);
      CHECK(decode_container(e.bytes) == r);
    }
}

TEST_CASE("encoding is deterministic across thread counts") {
  std::mt19937 rng(4);
  const Raster r = fixtures::sparse_blob_raster(rng, 96, 80, 2, 0.05);
  EncodeConfig a, b;
  a.threads = 1;
  b.threads = 6;
  CHECK(encode(r, a).bytes == encode(r, b).bytes);
  CHECK(encode(r, a).bytes == encode(r, a).bytes);
}

TEST_CASE("in-place and binned decode identically on a two-bin image") {
  std::mt19937 rng(17);
  const Raster r = two_level(rng, 64, 48);
  EncodeConfig cfg;
  cfg.bins = 2;
  cfg.sigma = 0.0;
  cfg.reduce = 0;
  cfg.strategy = Strategy::kInPlace;
  const auto inplace = encode(r, cfg);
  cfg.strategy = Strategy::kBinned;
  const auto binned = encode(r, cfg);
  CHECK(inplace.report.k == 2);
  CHECK(binned.report.k == 2);
  CHECK(inplace.bytes != binned.bytes);
  CHECK(decode_container(inplace.bytes) == decode_container(binned.bytes));
  CHECK(decode_container(binned.bytes) == r);
}

TEST_CASE("overrides are honored in the header") {
  std::mt19937 rng(23);
  const Raster r = two_level(rng, 64, 64);
  EncodeConfig cfg;
  cfg.bins = 2;
  cfg.sigma = 0.0;
  cfg.reduce = 0;
  const auto e = encode(r, cfg);
  const ContainerHeader h = parse_header(e.bytes);
  CHECK(h.k == 2);
  CHECK(h.sigma_centipixels == 0);
  CHECK(h.reduce == 0);
  CHECK(decode_container(e.bytes) == r);

  cfg.sigma = 2.5;
  cfg.reduce = 10;
  const ContainerHeader h2 = parse_header(encode(r, cfg).bytes);
  CHECK(h2.sigma_centipixels == 250);
  CHECK(h2.reduce == 10);

  cfg.bins = 0;
  CHECK_THROWS_AS(encode(r, cfg), Error);
  cfg.bins = 2;
  cfg.sigma = -1.0;
  CHECK_THROWS_AS(encode(r, cfg), Error);
}

TEST_CASE("slowest picks the smallest candidate") {
  std::mt19937 rng(31);
  for (int i = 0; i < 3; ++i) {
    const Raster r = i == 0 ? two_level(rng, 40, 40) : fixtures::sparse_blob_raster(rng, 48, 48, 1 + i, 0.05);
    EncodeConfig cfg;
    cfg.slowest = true;
    const auto e = encode(r, cfg);
    CHECK((e.report.flags & flags::kSlowest) != 0);
    bool per_bin = false;
    for (const auto& c : e.report.candidates) {
      CHECK(e.bytes.size() <= c.bytes);
      per_bin = per_bin || c.name.rfind("per-bin-best", 0) == 0;
    }
    CHECK(per_bin);
    CHECK(decode_container(e.bytes) == r);
  }
}

TEST_CASE("novis stores the label raster when it is smaller") {
  std::mt19937 rng(41);
  Raster r(64, 64, 16, 0);
  for (auto& p : r.pixels) p = static_cast<std::uint16_t>(rng() % 2 ? 60000 + rng() % 4 : rng() % 4);
  EncodeConfig cfg;
  cfg.novis = true;
  cfg.bins = 2;
  cfg.sigma = 0.0;
  cfg.reduce = 0;
  cfg.strategy = Strategy::kBinned;
  const auto e = encode(r, cfg);
  const Container c = parse_container(e.bytes);
  CHECK((c.header.flags & flags::kNoVis) != 0);
  CHECK(c.tolerance_kind == ToleranceKind::kRaster);
  CHECK(decode_container(e.bytes) == r);
}

TEST_CASE("mixed mode routes bins by entropy") {
  std::mt19937 rng(51);
  const Raster tmpl = split_template(64, 64);
  Raster r(64, 64, 16, 0);
  for (std::uint32_t y = 0; y < 64; ++y)
    for (std::uint32_t x = 0; x < 64; ++x)
      r.at(x, y) = static_cast<std::uint16_t>(x < 32 ? rng() % 4096 : 20000 + (x + y) / 16);
  EncodeConfig cfg;
  cfg.label_template = &tmpl;
  cfg.strategy = Strategy::kMixed;
  const auto e = encode(r, cfg);
  const Container c = parse_container(e.bytes);
  REQUIRE(c.descriptors.size() == 2);
  std::set<CodecId> ids;
  for (const auto& d : c.descriptors) ids.insert(d.codec);
  CHECK(ids.size() == 2);
  CHECK(c.descriptors[0].codec != CodecId::kPredictiveImage);
  CHECK(c.descriptors[1].codec == CodecId::kPredictiveImage);
  CHECK(c.descriptors[1].layout == Layout::kCrop);
  CHECK(decode_container(e.bytes) == r);
}

TEST_CASE("template encoding") {
  std::mt19937 rng(61);
  const Raster r = fixtures::random_raster(rng, 40, 30);
  Raster tmpl(40, 30, 8, 0);
  for (std::uint32_t y = 0; y < 30; ++y)
    for (std::uint32_t x = 0; x < 40; ++x) tmpl.at(x, y) = static_cast<std::uint16_t>((x / 10 + y / 10) % 3);
  EncodeConfig cfg;
  cfg.label_template = &tmpl;
  for (Strategy s : {Strategy::kInPlace, Strategy::kBinned, Strategy::kMixed, Strategy::kAuto}) {
    cfg.strategy = s;
    const auto e = encode(r, cfg);
    const ContainerHeader h = parse_header(e.bytes);
    CHECK(h.k == 3);
    CHECK((h.flags & flags::kTemplate) != 0);
    CHECK(decode_container(e.bytes) == r);
  }
  Raster wrong(39, 30, 8, 0);
  cfg.label_template = &wrong;
  CHECK_THROWS_AS(encode(r, cfg), Error);
}

TEST_CASE("AGCR+ all-lossless equals the template encoding") {
  std::mt19937 rng(71);
  const Raster r = two_level(rng, 48, 48);
  const Raster tmpl = split_template(48, 48);
  EncodeConfig plain;
  plain.label_template = &tmpl;
  EncodeConfig plus = plain;
  plus.loss = {{0, LossSpec{}}, {1, LossSpec{}}};
  CHECK(encode(r, plain).bytes == encode(r, plus).bytes);
}

TEST_CASE("AGCR+ keeps lossless labels exact") {
  std::mt19937 rng(81);
  Raster r(64, 64, 16, 0);
  for (auto& p : r.pixels) p = static_cast<std::uint16_t>(1000 + rng() % 3000);
  const Raster tmpl = split_template(64, 64);
  EncodeConfig cfg;
  cfg.label_template = &tmpl;
  cfg.loss = {{0, parse_loss_spec("30")}, {1, LossSpec{}}};
  const auto e = encode(r, cfg);
  const Container c = parse_container(e.bytes);
  CHECK((c.header.flags & flags::kPlus) != 0);
  const Raster d = decode_container(e.bytes);
  std::size_t changed = 0;
  for (std::uint32_t y = 0; y < 64; ++y)
    for (std::uint32_t x = 0; x < 64; ++x) {
      if (tmpl.at(x, y) == 1) {
        CHECK(d.at(x, y) == r.at(x, y));
      } else {
        changed += d.at(x, y) != r.at(x, y);
      }
    }
  CHECK(changed > 0);
  if (backend_info(CodecId::kLossyWavelet).available) {
    bool wavelet = false;
    for (const auto& dd : c.descriptors) wavelet = wavelet || dd.codec == CodecId::kLossyWavelet;
    CHECK(wavelet);
  }
}

TEST_CASE("AGCR+ mean background") {
  std::mt19937 rng(91);
  Raster r(50, 40, 16, 0);
  for (auto& p : r.pixels) p = static_cast<std::uint16_t>(rng() % 1000);
  const Raster tmpl = split_template(50, 40);
  std::uint64_t sum = 0, n = 0;
  for (std::uint32_t y = 0; y < 40; ++y)
    for (std::uint32_t x = 0; x < 25; ++x) sum += r.at(x, y), ++n;
  const auto mean = static_cast<std::uint16_t>(std::lround(static_cast<double>(sum) / static_cast<double>(n)));
  EncodeConfig cfg;
  cfg.label_template = &tmpl;
  cfg.loss = {{0, parse_loss_spec("mean")}, {1, LossSpec{}}};
  const auto e = encode(r, cfg);
  CHECK((parse_header(e.bytes).flags & flags::kRoiMean) != 0);
  const Raster d = decode_container(e.bytes);
  for (std::uint32_t y = 0; y < 40; ++y)
    for (std::uint32_t x = 0; x < 50; ++x) CHECK(d.at(x, y) == (x < 25 ? mean : r.at(x, y)));
}

TEST_CASE("AGCR+ argument errors") {
  const Raster r(16, 16, 16, 5);
  const Raster tmpl = split_template(16, 16);
  EncodeConfig cfg;
  cfg.loss = {{0, parse_loss_spec("mean")}, {1, LossSpec{}}};
  CHECK_THROWS_AS(encode(r, cfg), Error);  // no template
  cfg.label_template = &tmpl;
  cfg.loss = {{0, parse_loss_spec("mean")}};
  CHECK_THROWS_AS(encode(r, cfg), Error);  // label 1 missing
  cfg.loss = {{0, parse_loss_spec("mean")}, {1, LossSpec{}}, {300, LossSpec{}}};
  CHECK_THROWS_AS(encode(r, cfg), Error);
  cfg.loss = {{0, parse_loss_spec("mean")}, {1, LossSpec{}}};
  cfg.strategy = Strategy::kInPlace;
  CHECK_THROWS_AS(encode(r, cfg), Error);
}

TEST_CASE("sparse images beat the raw backends") {
  std::mt19937 rng(7);
  const Raster r = fixtures::sparse_blob_raster(rng, 128, 128, 2, 0.01);
  std::vector<std::uint8_t> raw;
  for (auto v : r.pixels) {
    raw.push_back(static_cast<std::uint8_t>(v));
    raw.push_back(static_cast<std::uint8_t>(v >> 8));
  }
  std::size_t best = std::min(compress_bytes(CodecId::kGeneralBwt, raw).size(),
                              compress_bytes(CodecId::kGeneralLz, raw).size());
  best = std::min(best, jpegls_encode(ImagePlane{r.width, r.height, r.bit_depth, r.pixels}).size());
  const auto e = encode(r);
  CHECK(static_cast<double>(e.bytes.size()) < 1.05 * static_cast<double>(best));
}
