#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "agcr/codec.hpp"
#include "agcr/container.hpp"
#include "agcr/decode.hpp"
#include "agcr/raster.hpp"
#include "fixtures.hpp"

using namespace agcr;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(AGCR_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* p = ::popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int st = ::pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("agcr_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::vector<std::uint8_t> slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Low-bit noise everywhere plus a bright square.
Raster noisy_square(std::uint32_t seed) {
  std::mt19937 rng(seed);
  Raster r(64, 64, 16, 0);
  for (std::uint32_t y = 0; y < 64; ++y)
    for (std::uint32_t x = 0; x < 64; ++x) {
      auto v = static_cast<std::uint16_t>(rng() % 4);
      if (x >= 16 && x < 32 && y >= 16 && y < 32) v += 4000;
      r.pixels[y * 64 + x] = v;
    }
  return r;
}

// Background, a frame at a middle level and a bright core holding a dark
// island, so every level owns at least one stored region.
Raster three_levels() {
  std::mt19937 rng(5);
  Raster r(64, 64, 16, 0);
  for (std::uint32_t y = 0; y < 64; ++y)
    for (std::uint32_t x = 0; x < 64; ++x) {
      std::uint16_t v = static_cast<std::uint16_t>(rng() % 4);
      if (x >= 8 && x < 56 && y >= 8 && y < 56) v += 20000;
      if (x >= 20 && x < 44 && y >= 20 && y < 44) v += 20000;
      if (x >= 28 && x < 36 && y >= 28 && y < 36) v = static_cast<std::uint16_t>(v % 4);
      r.pixels[y * 64 + x] = v;
    }
  return r;
}

// Minimal OBJ reader written against the format description: objects,
// vertices with three coordinates, polylines with 1-based indices.
struct Obj {
  struct Object {
    std::string name;
    std::vector<std::vector<std::size_t>> lines;
  };
  std::vector<std::array<double, 3>> v;
  std::vector<Object> objects;
};

Obj parse_obj(const std::string& path) {
  Obj obj;
  std::ifstream in(path);
  REQUIRE(in);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "o") {
      Obj::Object o;
      ss >> o.name;
      REQUIRE_MESSAGE(!o.name.empty(), "line ", lineno);
      obj.objects.push_back(o);
    } else if (tag == "v") {
      std::array<double, 3> p{};
      REQUIRE_MESSAGE(static_cast<bool>(ss >> p[0] >> p[1] >> p[2]), "line ", lineno);
      obj.v.push_back(p);
    } else if (tag == "l") {
      REQUIRE_MESSAGE(!obj.objects.empty(), "line ", lineno);
      std::vector<std::size_t> idx;
      long long i;
      while (ss >> i) {
        REQUIRE_MESSAGE(i >= 1, "line ", lineno);
        REQUIRE_MESSAGE(static_cast<std::size_t>(i) <= obj.v.size(), "line ", lineno);
        idx.push_back(static_cast<std::size_t>(i));
      }
      REQUIRE_MESSAGE(ss.eof(), "line ", lineno);
      REQUIRE_MESSAGE(idx.size() >= 2, "line ", lineno);
      obj.objects.back().lines.push_back(idx);
    } else {
      FAIL("unexpected OBJ statement '", tag, "' on line ", lineno);
    }
  }
  return obj;
}

}  // namespace

TEST_CASE("compress and decompress round trip") {
  TempDir tmp;
  std::mt19937 rng(11);
  std::vector<Raster> corpus = {noisy_square(1), three_levels(), fixtures::random_raster(rng, 33, 17),
                                fixtures::sparse_blob_raster(rng, 96, 80, 3, 0.1)};
  for (auto& [name, r] : fixtures::adversarial_rasters()) corpus.push_back(r);
  int i = 0;
  for (const Raster& r : corpus) {
    const std::string in = tmp / ("in" + std::to_string(i) + (i % 2 ? ".tif" : ".agrw"));
    save_raster(r, in);
    const std::string c = tmp / ("c" + std::to_string(i) + ".agcr");
    const Run comp = run("compress " + in + " " + c);
    REQUIRE_MESSAGE(comp.status == 0, comp.out);
    CHECK(comp.out.find("ratio") != std::string::npos);
    CHECK(comp.out.find("strategy") != std::string::npos);
    const std::string out = tmp / ("o" + std::to_string(i) + ".tif");
    const Run dec = run("decompress " + c + " " + out + " --verify");
    REQUIRE_MESSAGE(dec.status == 0, dec.out);
    CHECK(dec.out == "OK\n");
    CHECK(load_raster(out) == r);
    ++i;
  }
}

TEST_CASE("corrupt containers exit with a data error") {
  TempDir tmp;
  save_raster(noisy_square(2), tmp / "a.tif");
  REQUIRE(run("compress " + tmp / "a.tif " + tmp / "a.agcr").status == 0);
  auto bytes = slurp(tmp / "a.agcr");
  bytes[0] = 'Z';
  std::ofstream(tmp / "bad.agcr", std::ios::binary).write(reinterpret_cast<const char*>(bytes.data()),
                                                         static_cast<std::streamsize>(bytes.size()));
  const Run r = run("decompress " + tmp / "bad.agcr " + tmp / "x.tif");
  CHECK(r.status == 2);
  CHECK(r.out.find("magic") != std::string::npos);
  CHECK_FALSE(fs::exists(tmp / "x.tif"));
  CHECK(run("decompress " + tmp / "bad.agcr --verify").status == 2);
  CHECK(run("inspect " + tmp / "bad.agcr").status == 2);
}

TEST_CASE("exact-mode overrides land in the header") {
  TempDir tmp;
  save_raster(noisy_square(3), tmp / "a.tif");
  REQUIRE(run("compress --bins 2 --sigma 0 --no-reduce " + tmp / "a.tif " + tmp / "a.agcr").status == 0);
  const Run r = run("inspect --json " + tmp / "a.agcr");
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["k"] == 2);
  CHECK(j["sigma"] == 0.0);
  CHECK(j["reduce"] == 0);
  const ContainerHeader h = parse_header(slurp(tmp / "a.agcr"));
  CHECK(h.k == 2);
  CHECK(h.sigma_centipixels == 0);
  CHECK(h.reduce == 0);
}

TEST_CASE("template with per-label loss") {
  TempDir tmp;
  const Raster r = three_levels();
  Raster mask(64, 64, 8, 0);
  for (std::uint32_t y = 8; y < 56; ++y)
    for (std::uint32_t x = 8; x < 56; ++x) mask.pixels[y * 64 + x] = 1;
  save_raster(r, tmp / "a.tif");
  save_raster(mask, tmp / "m.tif");
  const Run c = run("compress " + tmp / "a.tif " + tmp / "a.agcr --template " + tmp / "m.tif --loss 0:30 --loss 1:lossless");
  REQUIRE_MESSAGE(c.status == 0, c.out);
  const auto bytes = slurp(tmp / "a.agcr");
  CHECK((parse_header(bytes).flags & flags::kPlus) != 0);
  REQUIRE(run("decompress " + tmp / "a.agcr " + tmp / "o.tif").status == 0);
  const Raster back = load_raster(tmp / "o.tif");
  for (std::size_t i = 0; i < r.pixels.size(); ++i)
    if (mask.pixels[i] == 1) REQUIRE(back.pixels[i] == r.pixels[i]);

  CHECK(run("compress " + tmp / "a.tif " + tmp / "b.agcr --template " + tmp / "m.tif --loss 0:30").status == 1);
  CHECK(run("compress " + tmp / "a.tif " + tmp / "b.agcr --loss 0:30").status == 1);
  CHECK(run("compress " + tmp / "a.tif " + tmp / "b.agcr --template " + tmp / "m.tif --loss zero:30 --loss 1:lossless")
            .status == 1);
}

TEST_CASE("OBJ export") {
  TempDir tmp;
  SUBCASE("single square") {
    save_raster(noisy_square(4), tmp / "a.tif");
    REQUIRE(run("compress --bins 2 --sigma 0 --no-reduce --strategy binned " + tmp / "a.tif " + tmp / "a.agcr").status == 0);
    const Run r = run("export-obj " + tmp / "a.agcr " + tmp / "a.obj");
    REQUIRE_MESSAGE(r.status == 0, r.out);
    const Obj obj = parse_obj(tmp / "a.obj");
    CHECK(obj.v.size() == 4);
    REQUIRE(obj.objects.size() == 1);
    REQUIRE(obj.objects[0].lines.size() == 1);
    CHECK(obj.objects[0].lines[0] == std::vector<std::size_t>{1, 2, 3, 4, 1});
    std::set<std::pair<double, double>> corners;
    for (const auto& p : obj.v) corners.insert({p[0], p[1]});
    CHECK(corners == std::set<std::pair<double, double>>{{16, 16}, {31, 16}, {16, 31}, {31, 31}});
  }
  SUBCASE("three levels") {
    save_raster(three_levels(), tmp / "a.tif");
    REQUIRE(run("compress --bins 3 --sigma 0 --no-reduce --strategy binned " + tmp / "a.tif " + tmp / "a.agcr").status == 0);
    REQUIRE(parse_header(slurp(tmp / "a.agcr")).k == 3);
    REQUIRE(run("export-obj " + tmp / "a.agcr " + tmp / "a.obj").status == 0);
    const Obj obj = parse_obj(tmp / "a.obj");
    std::set<double> z;
    for (const auto& p : obj.v) z.insert(p[2]);
    CHECK(z == std::set<double>{0, 1, 2});
    for (const auto& o : obj.objects)
      for (const auto& l : o.lines) CHECK(l.front() == l.back());
  }
  SUBCASE("in-place container") {
    std::mt19937 rng(1);
    save_raster(fixtures::random_raster(rng, 20, 20), tmp / "a.tif");
    REQUIRE(run("compress --strategy inplace " + tmp / "a.tif " + tmp / "a.agcr").status == 0);
    const Run r = run("export-obj " + tmp / "a.agcr " + tmp / "a.obj");
    CHECK(r.status == 2);
    CHECK(r.out.find("no shape stream") != std::string::npos);
  }
}

TEST_CASE("extract-bin") {
  TempDir tmp;
  save_raster(three_levels(), tmp / "a.tif");
  REQUIRE(run("compress --bins 3 --sigma 0 --strategy mixed " + tmp / "a.tif " + tmp / "a.agcr").status == 0);
  const auto bytes = slurp(tmp / "a.agcr");
  const Container c = parse_container(bytes);
  const Raster full = decode_container(bytes);
  const ToleranceRaster t = decode_tolerance(c, 1);
  for (std::uint32_t l = 0; l < c.header.k; ++l) {
    const std::string out = tmp / ("b" + std::to_string(l) + ".tif");
    REQUIRE(run("extract-bin " + tmp / "a.agcr " + std::to_string(l) + " " + out).status == 0);
    const Raster part = load_raster(out);
    for (std::size_t i = 0; i < part.pixels.size(); ++i)
      REQUIRE(part.pixels[i] == (t.cells[i] == l ? full.pixels[i] : 0));
  }
  const Run bad = run("extract-bin " + tmp / "a.agcr 7 " + tmp / "x.tif");
  CHECK(bad.status != 0);
  CHECK(bad.out.find("out of range") != std::string::npos);

  // k = 1
  save_raster(Raster(16, 16, 16, 1234), tmp / "flat.tif");
  REQUIRE(run("compress --strategy binned " + tmp / "flat.tif " + tmp / "flat.agcr").status == 0);
  REQUIRE(run("extract-bin " + tmp / "flat.agcr 0 " + tmp / "flat0.tif").status == 0);
  CHECK(load_raster(tmp / "flat0.tif") == Raster(16, 16, 16, 1234));

  REQUIRE(run("compress --strategy inplace " + tmp / "a.tif " + tmp / "i.agcr").status == 0);
  const Run ip = run("extract-bin " + tmp / "i.agcr 0 " + tmp / "x.tif");
  CHECK(ip.status == 2);
  CHECK(ip.out.find("unsupported operation") != std::string::npos);
}

TEST_CASE("runs are reproducible") {
  TempDir tmp;
  std::mt19937 rng(4);
  save_raster(fixtures::sparse_blob_raster(rng, 80, 80, 2, 0.1), tmp / "a.tif");
  REQUIRE(run("compress --threads 1 " + tmp / "a.tif " + tmp / "a.agcr").status == 0);
  REQUIRE(run("compress --threads 8 " + tmp / "a.tif " + tmp / "b.agcr").status == 0);
  REQUIRE(run("compress " + tmp / "a.tif " + tmp / "c.agcr").status == 0);
  CHECK(slurp(tmp / "a.agcr") == slurp(tmp / "b.agcr"));
  CHECK(slurp(tmp / "a.agcr") == slurp(tmp / "c.agcr"));
}

TEST_CASE("flags and usage") {
  TempDir tmp;
  const Run help = run("compress --help");
  CHECK(help.status == 0);
  for (const char* flag : {"--slowest", "--novis", "--bins", "--sigma", "--floor", "--reduce", "--no-reduce",
                           "--template", "--loss", "--strategy", "--json"})
    CHECK_MESSAGE(help.out.find(flag) != std::string::npos, flag);
  CHECK(run("--help").out.find("--threads") != std::string::npos);

  save_raster(three_levels(), tmp / "a.tif");
  CHECK(run("compress --bogus " + tmp / "a.tif " + tmp / "a.agcr").status == 1);
  CHECK(run("frobnicate").status == 1);
  CHECK(run("").status == 1);
  CHECK(run("compress --bins 0 " + tmp / "a.tif " + tmp / "a.agcr").status == 1);
  CHECK(run("compress " + tmp / "missing.tif " + tmp / "a.agcr").status == 1);

  REQUIRE(run("compress -NOVIS --bins 3 --sigma 0 --strategy binned " + tmp / "a.tif " + tmp / "n.agcr").status == 0);
  const auto bytes = slurp(tmp / "n.agcr");
  CHECK((parse_header(bytes).flags & flags::kNoVis) != 0);
  CHECK(decode_container(bytes) == three_levels());
}

TEST_CASE("json reports") {
  TempDir tmp;
  save_raster(noisy_square(6), tmp / "a.tif");
  const Run s = run("stats --json " + tmp / "a.tif");
  REQUIRE(s.status == 0);
  const auto j = nlohmann::json::parse(s.out);
  const ImageStats st = compute_stats(noisy_square(6));
  CHECK(j["gini"].get<double>() == st.gini);
  CHECK(j["entropy_bits"].get<double>() == st.shannon_entropy);
  CHECK(j["width"] == 64);

  const Run c = run("compress --json " + tmp / "a.tif " + tmp / "a.agcr");
  REQUIRE(c.status == 0);
  const auto cj = nlohmann::json::parse(c.out);
  CHECK(cj["bytes_out"].get<std::size_t>() == slurp(tmp / "a.agcr").size());
  CHECK(cj["bytes_in"] == 64 * 64 * 2);
  CHECK(cj["ratio"].get<double>() == doctest::Approx(8192.0 / cj["bytes_out"].get<double>()));
}
