#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "agcr/codec.hpp"
#include "agcr/container.hpp"
#include "agcr/decode.hpp"
#include "agcr/error.hpp"
#include "agcr/raster.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

std::vector<std::uint8_t> read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw agcr::Error(agcr::ErrorCode::kIo, "cannot open " + p.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& p, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw agcr::Error(agcr::ErrorCode::kIo, "cannot write " + p.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw agcr::Error(agcr::ErrorCode::kIo, "short write to " + p.string());
}

std::string flag_names(std::uint16_t f) {
  static const std::pair<std::uint16_t, const char*> names[] = {
      {agcr::flags::kTemplate, "template"},       {agcr::flags::kApproximate, "approximate"},
      {agcr::flags::kNoVis, "novis"},             {agcr::flags::kPlus, "plus"},
      {agcr::flags::kRoiMean, "roi-mean"},        {agcr::flags::kPredictiveUnavailable, "no-jpegls"},
      {agcr::flags::kWaveletUnavailable, "no-j2k"}, {agcr::flags::kSlowest, "slowest"}};
  std::string s;
  for (auto [bit, name] : names)
    if (f & bit) s += (s.empty() ? "" : ",") + std::string(name);
  return s.empty() ? "-" : s;
}

const char* layout_name(agcr::Layout l) {
  switch (l) {
    case agcr::Layout::kWhole: return "whole";
    case agcr::Layout::kRasterOrder: return "raster-order";
    case agcr::Layout::kCrop: return "crop";
  }
  return "?";
}

const char* loss_name(agcr::LossMode m) {
  switch (m) {
    case agcr::LossMode::kLossless: return "lossless";
    case agcr::LossMode::kRatio: return "ratio";
    case agcr::LossMode::kMean: return "mean";
  }
  return "?";
}

json stats_json(const agcr::ImageStats& s) {
  return {{"gini", s.gini},
          {"entropy_bits", s.shannon_entropy},
          {"std_dev", s.std_dev},
          {"normalized_std_dev", s.normalized_std_dev},
          {"min", s.dynamic_range.first},
          {"max", s.dynamic_range.second},
          {"background_fraction", s.background_fraction},
          {"distinct_values", s.distinct_values}};
}

struct CompressArgs {
  std::string input, output, strategy = "auto", template_path;
  std::optional<std::uint32_t> bins;
  std::optional<double> sigma;
  std::optional<std::uint32_t> floor;
  std::uint32_t reduce = 10;
  bool no_reduce = false, slowest = false, novis = false, json = false;
  std::vector<std::string> loss;
};

int cmd_compress(const CompressArgs& a, unsigned threads) {
  const agcr::Raster r = agcr::load_raster(a.input);
  agcr::EncodeConfig cfg;
  static const std::map<std::string, agcr::Strategy> strategies = {{"auto", agcr::Strategy::kAuto},
                                                                   {"inplace", agcr::Strategy::kInPlace},
                                                                   {"binned", agcr::Strategy::kBinned},
                                                                   {"mixed", agcr::Strategy::kMixed}};
  cfg.strategy = strategies.at(a.strategy);
  cfg.bins = a.bins;
  cfg.sigma = a.sigma;
  if (a.floor) {
    if (*a.floor > 65535) throw agcr::Error(agcr::ErrorCode::kInvalidArgument, "--floor must be <= 65535");
    cfg.floor = static_cast<std::uint16_t>(*a.floor);
  }
  cfg.reduce = a.no_reduce ? 0 : a.reduce;
  cfg.slowest = a.slowest;
  cfg.novis = a.novis;
  cfg.threads = threads;

  std::optional<agcr::Raster> mask;
  if (!a.template_path.empty()) {
    mask = agcr::load_raster(a.template_path);
    cfg.label_template = &*mask;
  }
  for (const std::string& item : a.loss) {
    const auto colon = item.find(':');
    if (colon == std::string::npos || colon == 0)
      throw agcr::Error(agcr::ErrorCode::kInvalidArgument, "--loss expects BIN:SPEC, got '" + item + "'");
    std::uint32_t label = 0;
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item.substr(0, colon), &used);
      if (used != colon || v > 255) throw std::out_of_range("label");
      label = static_cast<std::uint32_t>(v);
    } catch (const std::logic_error&) {
      throw agcr::Error(agcr::ErrorCode::kInvalidArgument, "bad bin index in --loss '" + item + "'");
    }
    if (cfg.loss.count(label))
      throw agcr::Error(agcr::ErrorCode::kInvalidArgument, "bin " + std::to_string(label) + " given twice in --loss");
    cfg.loss[label] = agcr::parse_loss_spec(item.substr(colon + 1));
  }

  const agcr::EncodeResult res = agcr::encode(r, cfg);
  write_file(a.output, res.bytes);
  const auto& rep = res.report;
  const double ratio = res.bytes.empty() ? 0.0 : static_cast<double>(rep.raw_bytes) / static_cast<double>(res.bytes.size());

  if (a.json) {
    json bins = json::array();
    for (const auto& b : rep.bins)
      bins.push_back({{"label", b.label},
                      {"pixels", b.pixels},
                      {"codec", std::string(agcr::codec_name(b.codec))},
                      {"layout", layout_name(b.layout)},
                      {"loss", loss_name(b.loss)},
                      {"bytes", b.bytes}});
    json cands = json::array();
    for (const auto& c : rep.candidates)
      cands.push_back({{"name", c.name}, {"strategy", std::string(agcr::strategy_name(c.strategy))}, {"bytes", c.bytes}});
    json out = {{"input", a.input},
                {"output", a.output},
                {"width", r.width},
                {"height", r.height},
                {"bit_depth", r.bit_depth},
                {"bytes_in", rep.raw_bytes},
                {"bytes_out", res.bytes.size()},
                {"ratio", ratio},
                {"strategy", std::string(agcr::strategy_name(rep.strategy))},
                {"candidate", rep.candidate},
                {"k", rep.k},
                {"sigma", rep.sigma},
                {"background", rep.background},
                {"flags", flag_names(rep.flags)},
                {"regions", rep.regions},
                {"vertices", rep.vertices},
                {"stats", stats_json(rep.stats)},
                {"bins", bins},
                {"candidates", cands},
                {"warnings", rep.warnings}};
    std::cout << out.dump(2) << '\n';
    return kExitOk;
  }

  std::printf("%s -> %s\n", a.input.c_str(), a.output.c_str());
  std::printf("size      %zu -> %zu bytes (ratio %.3f)\n", rep.raw_bytes, res.bytes.size(), ratio);
  std::printf("strategy  %s (%s)\n", std::string(agcr::strategy_name(rep.strategy)).c_str(), rep.candidate.c_str());
  std::printf("k %u  sigma %.2f  background %u  regions %zu  vertices %zu  flags %s\n", rep.k, rep.sigma,
              rep.background, rep.regions, rep.vertices, flag_names(rep.flags).c_str());
  std::printf("%5s %10s %-10s %-13s %-9s %10s\n", "bin", "pixels", "codec", "layout", "loss", "bytes");
  for (const auto& b : rep.bins)
    std::printf("%5u %10zu %-10s %-13s %-9s %10zu\n", b.label, b.pixels,
                std::string(agcr::codec_name(b.codec)).c_str(), layout_name(b.layout), loss_name(b.loss), b.bytes);
  for (const auto& w : rep.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  return kExitOk;
}

int cmd_decompress(const std::string& input, const std::string& output, bool verify, unsigned threads) {
  const auto bytes = read_file(input);
  // The checksum comparison inside the decoder is the verification.
  const agcr::Raster r = agcr::decode_container(bytes, agcr::DecodeOptions{threads, false});
  if (!output.empty()) agcr::save_raster(r, output);
  if (verify) std::printf("OK\n");
  return kExitOk;
}

int cmd_inspect(const std::string& input, bool as_json) {
  const auto bytes = read_file(input);
  const agcr::Container c = agcr::parse_container(bytes);
  const auto& h = c.header;
  static const char* kinds[] = {"none", "shapes", "raster"};
  const char* kind = kinds[static_cast<int>(c.tolerance_kind)];
  std::size_t vertices = 0;
  for (const auto& rec : c.regions) vertices += rec.contour.vertex_count();
  if (as_json) {
    json bins = json::array();
    for (std::size_t i = 0; i < c.descriptors.size(); ++i) {
      const auto& d = c.descriptors[i];
      bins.push_back({{"label", d.label},
                      {"codec", std::string(agcr::codec_name(d.codec))},
                      {"layout", layout_name(d.layout)},
                      {"loss", loss_name(d.loss)},
                      {"value_bits", d.value_bits},
                      {"bytes", c.payloads[i].size()},
                      {"offset", c.payload_offsets[i]}});
    }
    json out = {{"bytes", bytes.size()},
                {"width", h.width},
                {"height", h.height},
                {"bit_depth", h.bit_depth},
                {"k", h.k},
                {"strategy", std::string(agcr::strategy_name(h.strategy))},
                {"flags", flag_names(h.flags)},
                {"background", h.background},
                {"sigma", h.sigma_centipixels / 100.0},
                {"reduce", h.reduce},
                {"output_crc", h.output_crc},
                {"tolerance", kind},
                {"regions", c.regions.size()},
                {"vertices", vertices},
                {"bins", bins}};
    std::cout << out.dump(2) << '\n';
    return kExitOk;
  }
  std::printf("AGCR v%u  %zu bytes\n", agcr::kContainerVersion, bytes.size());
  std::printf("image     %ux%u, %u-bit\n", h.width, h.height, h.bit_depth);
  std::printf("strategy  %s  k %u  background %u\n", std::string(agcr::strategy_name(h.strategy)).c_str(), h.k,
              h.background);
  std::printf("sigma %.2f  reduce %u  flags %s  crc %08x\n", h.sigma_centipixels / 100.0, h.reduce,
              flag_names(h.flags).c_str(), h.output_crc);
  std::printf("tolerance %s  regions %zu  vertices %zu\n", kind, c.regions.size(), vertices);
  std::printf("%5s %-10s %-13s %-9s %5s %10s %10s\n", "bin", "codec", "layout", "loss", "bits", "bytes", "offset");
  for (std::size_t i = 0; i < c.descriptors.size(); ++i) {
    const auto& d = c.descriptors[i];
    std::printf("%5u %-10s %-13s %-9s %5u %10zu %10llu\n", d.label, std::string(agcr::codec_name(d.codec)).c_str(),
                layout_name(d.layout), loss_name(d.loss), d.value_bits, c.payloads[i].size(),
                static_cast<unsigned long long>(c.payload_offsets[i]));
  }
  return kExitOk;
}

int cmd_extract_bin(const std::string& input, std::uint32_t label, const std::string& output, unsigned threads) {
  const auto bytes = read_file(input);
  agcr::save_raster(agcr::extract_bin(bytes, label, threads), output);
  return kExitOk;
}

int cmd_export_obj(const std::string& input, const std::string& output) {
  const auto bytes = read_file(input);
  const agcr::Container c = agcr::parse_container(bytes);
  if (c.tolerance_kind != agcr::ToleranceKind::kShapes)
    throw agcr::Error(agcr::ErrorCode::kUnsupportedOperation,
                      c.tolerance_kind == agcr::ToleranceKind::kRaster
                          ? "container stores its tolerance map as a raster (--novis); no shapes to export"
                          : "container has no shape stream (single bin or in-place fallback); nothing to export");
  std::ofstream out(output, std::ios::trunc);
  if (!out) throw agcr::Error(agcr::ErrorCode::kIo, "cannot write " + output);
  out << "# " << fs::path(input).filename().string() << ": " << c.header.width << "x" << c.header.height << ", k "
      << c.header.k << ", " << c.regions.size() << " regions, z = tolerance index\n";
  std::size_t next = 1;
  for (std::size_t i = 0; i < c.regions.size(); ++i) {
    const auto& rec = c.regions[i];
    out << "o region_" << i << "_t" << unsigned(rec.tolerance) << '\n';
    auto ring = [&](const std::vector<agcr::Vertex>& pts) {
      if (pts.empty()) return;
      for (const auto& v : pts) out << "v " << v.x << ' ' << v.y << ' ' << unsigned(rec.tolerance) << '\n';
      out << 'l';
      for (std::size_t j = 0; j < pts.size(); ++j) out << ' ' << next + j;
      out << ' ' << next << '\n';
      next += pts.size();
    };
    ring(rec.contour.outer);
    for (const auto& h : rec.contour.holes) ring(h);
  }
  if (!out) throw agcr::Error(agcr::ErrorCode::kIo, "short write to " + output);
  return kExitOk;
}

int cmd_stats(const std::string& input, bool as_json) {
  const agcr::Raster r = agcr::load_raster(input);
  const agcr::ImageStats s = agcr::compute_stats(r);
  if (as_json) {
    json out = {{"input", input}, {"width", r.width}, {"height", r.height}, {"bit_depth", r.bit_depth}};
    out.update(stats_json(s));
    std::cout << out.dump(2) << '\n';
    return kExitOk;
  }
  std::printf("%s: %ux%u, %u-bit\n", input.c_str(), r.width, r.height, r.bit_depth);
  std::printf("range [%u, %u]  distinct %u\n", s.dynamic_range.first, s.dynamic_range.second, s.distinct_values);
  std::printf("gini %.6f  entropy %.6f bits  std %.3f (normalized %.6f)\n", s.gini, s.shannon_entropy, s.std_dev,
              s.normalized_std_dev);
  std::printf("background fraction %.6f\n", s.background_fraction);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  // The original tool spelled this flag -NOVIS.
  std::vector<std::string> args(argv, argv + argc);
  for (auto& a : args)
    if (a == "-NOVIS") a = "--novis";
  std::vector<char*> argp;
  for (auto& a : args) argp.push_back(a.data());

  CLI::App app{"AGCR lossless raster compression"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker thread budget (0 = all hardware threads)")->check(CLI::NonNegativeNumber);

  CompressArgs ca;
  auto* compress = app.add_subcommand("compress", "Encode a raster into an .agcr container");
  compress->add_option("input", ca.input, "Input raster (TIFF or AGRW raw)")->required()->check(CLI::ExistingFile);
  compress->add_option("output", ca.output, "Output .agcr path")->required();
  compress->add_option("--strategy", ca.strategy, "Encoding strategy")
      ->check(CLI::IsMember({"auto", "inplace", "binned", "mixed"}));
  compress->add_flag("--slowest", ca.slowest, "Exhaustive search over backgrounds and per-bin codecs");
  compress->add_flag("--novis", ca.novis, "Store the tolerance map as an image instead of shapes (alias -NOVIS)");
  compress->add_option("--bins", ca.bins, "Number of tolerance bins (disables the k search)")
      ->check(CLI::Range(1u, 256u));
  compress->add_option("--sigma", ca.sigma, "Gaussian sigma in pixels (0 = no blur)")->check(CLI::NonNegativeNumber);
  compress->add_option("--floor", ca.floor, "Intensity floor: values at or below share bin 0");
  auto* reduce = compress->add_option("--reduce", ca.reduce, "Vertex budget per 100 region pixels (0 = off)");
  compress->add_flag("--no-reduce", ca.no_reduce, "Keep every contour vertex")->excludes(reduce);
  compress->add_option("--template", ca.template_path, "8-bit label mask replacing the threshold plan")
      ->check(CLI::ExistingFile);
  compress->add_option("--loss", ca.loss, "Per-label loss BIN:SPEC, SPEC = lossless | mean | <ratio>")
      ->allow_extra_args(false);
  compress->add_flag("--json", ca.json, "Print a machine-readable report");

  std::string d_in, d_out;
  bool verify = false;
  auto* decompress = app.add_subcommand("decompress", "Decode an .agcr container to a raster");
  decompress->add_option("input", d_in, "Input .agcr")->required()->check(CLI::ExistingFile);
  decompress->add_option("output", d_out, "Output raster (.tif, or .agrw/.raw)");
  decompress->add_flag("--verify", verify, "Check the embedded checksum and print OK");

  std::string i_in;
  bool i_json = false;
  auto* inspect = app.add_subcommand("inspect", "Print the container header and bin table");
  inspect->add_option("input", i_in, "Input .agcr")->required()->check(CLI::ExistingFile);
  inspect->add_flag("--json", i_json, "Print JSON");

  std::string e_in, e_out;
  std::uint32_t e_bin = 0;
  auto* extract = app.add_subcommand("extract-bin", "Restore one tolerance bin, all other pixels 0");
  extract->add_option("input", e_in, "Input .agcr")->required()->check(CLI::ExistingFile);
  extract->add_option("bin", e_bin, "Bin index")->required();
  extract->add_option("output", e_out, "Output raster")->required();

  std::string o_in, o_out;
  auto* obj = app.add_subcommand("export-obj", "Write region contours as a Wavefront OBJ");
  obj->add_option("input", o_in, "Input .agcr")->required()->check(CLI::ExistingFile);
  obj->add_option("output", o_out, "Output .obj")->required();

  std::string s_in;
  bool s_json = false;
  auto* stats = app.add_subcommand("stats", "Print image statistics");
  stats->add_option("input", s_in, "Input raster")->required()->check(CLI::ExistingFile);
  stats->add_flag("--json", s_json, "Print JSON");

  try {
    app.parse(static_cast<int>(argp.size()), argp.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (*decompress && d_out.empty() && !verify) {
    std::fprintf(stderr, "decompress: give an output path or --verify\n");
    return kExitUsage;
  }

  try {
    if (*compress) return cmd_compress(ca, threads);
    if (*decompress) return cmd_decompress(d_in, d_out, verify, threads);
    if (*inspect) return cmd_inspect(i_in, i_json);
    if (*extract) return cmd_extract_bin(e_in, e_bin, e_out, threads);
    if (*obj) return cmd_export_obj(o_in, o_out);
    if (*stats) return cmd_stats(s_in, s_json);
  } catch (const agcr::Error& e) {
    std::fprintf(stderr, "agcr: %s: %s\n", agcr::to_string(e.code()), e.what());
    return e.code() == agcr::ErrorCode::kInvalidArgument ? kExitUsage : kExitData;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "agcr: %s\n", e.what());
    return kExitData;
  }
  return kExitUsage;
}
