// lfsrng: generate LFSR streams, run the test battery, reproduce the result
// tables and model the time-tag / demultiplexer path.

#include <CLI11.hpp>

#include <array>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lfsrng/battery.hpp"
#include "lfsrng/bit_stream.hpp"
#include "lfsrng/combine.hpp"
#include "lfsrng/error.hpp"
#include "lfsrng/lfsr.hpp"
#include "lfsrng/manifest.hpp"
#include "lfsrng/report.hpp"
#include "lfsrng/reproduce.hpp"
#include "lfsrng/timetag.hpp"
#include "lfsrng/variant_spec.hpp"

namespace fs = std::filesystem;
using namespace lfsrng;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitSpec = 2;
constexpr int kExitIo = 3;

std::string num(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

std::uint64_t parse_hex_seed(const std::string& text) {
  std::string_view digits = text;
  if (digits.starts_with("0x") || digits.starts_with("0X")) digits.remove_prefix(2);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value, 16);
  if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw SpecError("invalid --seed '" + text + "' (expected hex)");
  }
  return value;
}

RunManifest base_manifest(const std::string& command) {
  RunManifest m;
  m.command = command;
  m.tool_version = LFSRNG_VERSION;
  return m;
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw IoError("cannot write " + path.string());
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

// generate ----------------------------------------------------------------

struct GenerateArgs {
  std::string variant;
  std::uint64_t bits = 0;
  std::string out;
  std::string format = "packed";
  std::optional<std::string> seed;
  bool fresh_seed = false;
};

int run_generate(const GenerateArgs& a) {
  GeneratorVariant variant = load_variant_spec(a.variant);
  if (a.seed && a.fresh_seed) throw SpecError("--seed and --fresh-seed are exclusive");
  if (a.seed) variant = reseed(variant, parse_hex_seed(*a.seed));
  if (a.fresh_seed) {
    std::random_device rd;
    const std::uint64_t base = (std::uint64_t{rd()} << 32) ^ rd();
    variant = reseed(variant, base);
  }
  variant.validate();
  if (a.bits == 0) throw SpecError("--bits must be positive");
  const BitFormat format = parse_bit_format(a.format);
  const BitStream bits = variant_stream(variant, a.bits);
  save_bits(a.out, bits, format);

  RunManifest m = base_manifest("generate");
  m.variant = format_variant_spec(variant);
  m.bits = a.bits;
  m.parameters["format"] = a.format;
  m.outputs = {a.out};
  for (const auto& leg : variant.legs) {
    const std::string s = leg.seed.to_string();
    if (!s.starts_with("reg:")) m.seeds.push_back(std::stoull(s));
  }
  write_manifest(manifest_path_for(a.out), m);
  std::cout << variant.label() << ": " << bits.size() << " bits -> " << a.out << '\n';
  return kExitOk;
}

// test --------------------------------------------------------------------

struct TestArgs {
  std::string in;
  std::string format = "packed";
  double alpha = 0.01;
  std::size_t lct_block = 500;
  std::size_t sequences = 1;
  std::size_t bits = 0;
  std::optional<std::string> mode;
  std::vector<std::string> tests;
  bool no_cap = false;
  bool strict = false;
  unsigned threads = 1;
  std::optional<std::string> out;
};

int run_test(const TestArgs& a) {
  const BitStream stream = load_bits(a.in, parse_bit_format(a.format));
  BatteryConfig config;
  config.params.alpha = a.alpha;
  config.params.linear_complexity_block = a.lct_block;
  config.params.threads = a.threads;
  config.sequence_count = a.sequences;
  if (a.sequences == 0) throw SpecError("--sequences must be positive");
  config.sequence_length = a.bits != 0 ? a.bits : stream.size() / a.sequences;
  if (a.mode) {
    config.mode = parse_verdict_mode(*a.mode);
  } else if (a.sequences > 1) {
    throw SpecError("--sequences > 1 needs an explicit --mode proportion");
  }
  config.cap_pattern_sizes = !a.no_cap;
  if (!a.tests.empty()) {
    config.tests.clear();
    for (const auto& t : a.tests) config.tests.push_back(parse_test_id(t));
  }
  if (config.sequence_length == 0) {
    throw LengthError("input holds " + std::to_string(stream.size()) + " bits, too few for " +
                          std::to_string(a.sequences) + " sequence(s)",
                      a.sequences, stream.size());
  }
  const BatteryReport report = run_battery(stream, config);

  std::ostringstream table;
  write_battery_table(table, report);
  std::cout << table.str();
  if (a.out) {
    const fs::path txt = *a.out + ".txt";
    const fs::path csv = *a.out + ".csv";
    write_text_file(txt, table.str());
    std::ostringstream machine;
    write_battery_csv(machine, report);
    write_text_file(csv, machine.str());

    RunManifest m = base_manifest("test");
    m.bits = config.sequence_count * config.sequence_length;
    m.inputs = {a.in};
    m.outputs = {txt.string(), csv.string()};
    m.parameters = {{"alpha", num(a.alpha)},
                    {"lct_block", std::to_string(a.lct_block)},
                    {"sequences", std::to_string(config.sequence_count)},
                    {"sequence_length", std::to_string(config.sequence_length)},
                    {"mode", std::string(to_string(config.mode))},
                    {"serial_block", std::to_string(report.params.serial_block)},
                    {"approximate_entropy_block",
                     std::to_string(report.params.approximate_entropy_block)},
                    {"format", a.format}};
    write_manifest(manifest_path_for(*a.out), m);
  }
  return a.strict && !report.all_pass() ? kExitFail : kExitOk;
}

// reproduce ---------------------------------------------------------------

struct ReproduceArgs {
  std::vector<std::string> tables;
  std::string scale = "desk";
  double alpha = 0.01;
  std::size_t lct_block = 500;
  std::optional<std::string> seed;
  bool large = false;
  std::size_t large_blocks = 20;
  bool strict = false;
  unsigned threads = 1;
  std::optional<std::string> out;
};

int run_reproduce(const ReproduceArgs& a) {
  ReproduceOptions options;
  options.scale = parse_scale(a.scale);
  options.alpha = a.alpha;
  options.lct_block = a.lct_block;
  options.threads = a.threads;
  if (a.seed) options.seed_base = parse_hex_seed(*a.seed);

  std::vector<TableId> ids;
  if (a.tables.empty() || (a.tables.size() == 1 && a.tables[0] == "all")) {
    ids = all_tables();
  } else {
    for (const auto& t : a.tables) ids.push_back(parse_table_id(t));
  }

  std::ostringstream text;
  bool all_match = true;
  for (TableId id : ids) {
    const ReproduceTable table = reproduce_table(id, options);
    std::ostringstream one;
    write_table(one, table);
    std::cout << one.str() << '\n' << std::flush;
    text << one.str() << '\n';
    all_match = all_match && table.lct_matches();
  }
  if (a.large) {
    const auto scans = outlook_scan({3100, 3200}, a.large_blocks, options.seed_base, a.threads);
    std::ostringstream one;
    write_outlook_scan(one, scans);
    std::cout << one.str();
    text << one.str();
  }
  if (a.out) {
    write_text_file(*a.out, text.str());
    RunManifest m = base_manifest("reproduce");
    m.outputs = {*a.out};
    std::string joined;
    for (TableId id : ids) joined += std::string(joined.empty() ? "" : ",") + std::string(to_string(id));
    m.parameters = {{"tables", joined},
                    {"scale", a.scale},
                    {"alpha", num(a.alpha)},
                    {"lct_block", std::to_string(a.lct_block)},
                    {"large", a.large ? "true" : "false"}};
    m.seeds = {options.seed_base, options.seed_base + 1};
    write_manifest(manifest_path_for(*a.out), m);
  }
  return a.strict && !all_match ? kExitFail : kExitOk;
}

// timetag -----------------------------------------------------------------

struct TimetagArgs {
  std::string in;
  std::string out;
  std::string format = "packed";
  double clock_hz = 1e6;
  std::int64_t window_ps = 0;
  double jitter_ps = 0.0;
  double skew_ps = 0.0;
  std::uint64_t noise_seed = 0;
  std::string symbol_format = "text";
};

CodecParams codec_from(const TimetagArgs& a) {
  CodecParams p;
  p.clock_hz = a.clock_hz;
  p.window_ps = a.window_ps;
  p.jitter_sigma_ps = a.jitter_ps;
  p.skew_sigma_ps = a.skew_ps;
  p.validate();
  return p;
}

void codec_parameters(RunManifest& m, const CodecParams& p) {
  m.parameters["clock_hz"] = num(p.clock_hz);
  m.parameters["window_ps"] = std::to_string(p.effective_window_ps());
  m.parameters["jitter_sigma_ps"] = num(p.jitter_sigma_ps);
  m.parameters["skew_sigma_ps"] = num(p.skew_sigma_ps);
}

int run_encode(const TimetagArgs& a) {
  const CodecParams params = codec_from(a);
  const BitStream bits = load_bits(a.in, parse_bit_format(a.format));
  const auto tags = encode_bits_to_tags(bits, params, a.noise_seed);
  std::ofstream out(a.out, std::ios::binary);
  if (!out) throw IoError("cannot write " + a.out);
  write_tags_csv(out, tags);
  out.close();

  RunManifest m = base_manifest("timetag encode");
  m.bits = bits.size();
  m.inputs = {a.in};
  m.outputs = {a.out};
  m.seeds = {a.noise_seed};
  codec_parameters(m, params);
  m.parameters["format"] = a.format;
  write_manifest(manifest_path_for(a.out), m);
  std::cout << bits.size() << " bits -> " << tags.size() << " tags\n";
  return kExitOk;
}

int run_decode(const TimetagArgs& a) {
  const CodecParams params = codec_from(a);
  std::ifstream in = open_input(a.in);
  const auto tags = read_tags_csv(in);
  const DecodeResult result = decode_tags_to_bits(tags, params);
  save_bits(a.out, result.bits, parse_bit_format(a.format));

  RunManifest m = base_manifest("timetag decode");
  m.bits = result.bits.size();
  m.inputs = {a.in};
  m.outputs = {a.out};
  codec_parameters(m, params);
  m.parameters["format"] = a.format;
  m.parameters["clock_tags"] = std::to_string(result.clock_tags);
  m.parameters["random_tags"] = std::to_string(result.random_tags);
  m.parameters["matched"] = std::to_string(result.matched);
  m.parameters["orphans"] = std::to_string(result.orphans);
  write_manifest(manifest_path_for(a.out), m);
  std::cout << "bits: " << result.bits.size() << ", clock tags: " << result.clock_tags
            << ", random tags: " << result.random_tags << ", matched: " << result.matched
            << ", orphans: " << result.orphans << '\n';
  return kExitOk;
}

int run_demux(const TimetagArgs& a) {
  const BitStream bits = load_bits(a.in, parse_bit_format(a.format));
  const DemuxResult result = demux_bits(bits);
  if (a.symbol_format == "text") {
    std::ofstream out(a.out, std::ios::binary);
    if (!out) throw IoError("cannot write " + a.out);
    write_symbols_text(out, result.symbols);
  } else if (a.symbol_format == "packed") {
    save_bits(a.out, symbols_to_bits(result.symbols), BitFormat::Packed);
  } else {
    throw SpecError("unknown --symbol-format '" + a.symbol_format + "' (text|packed)");
  }
  std::array<std::size_t, 4> counts{};
  for (auto s : result.symbols) ++counts[static_cast<std::size_t>(s)];

  RunManifest m = base_manifest("timetag demux");
  m.bits = bits.size();
  m.inputs = {a.in};
  m.outputs = {a.out};
  m.parameters["format"] = a.format;
  m.parameters["symbol_format"] = a.symbol_format;
  m.parameters["symbols"] = std::to_string(result.symbols.size());
  if (result.dropped_trailing_bit) m.parameters["note"] = result.note;
  write_manifest(manifest_path_for(a.out), m);
  std::cout << result.symbols.size() << " symbols: H " << counts[0] << ", V " << counts[1]
            << ", D " << counts[2] << ", A " << counts[3] << '\n';
  if (result.dropped_trailing_bit) std::cout << "note: " << result.note << '\n';
  return kExitOk;
}

// taps --------------------------------------------------------------------

int run_taps(std::optional<unsigned> width) {
  if (width) {
    const auto taps = primitive_taps(*width);
    for (std::size_t i = 0; i < taps.size(); ++i) std::cout << (i ? "," : "") << taps[i];
    std::cout << '\n';
    return kExitOk;
  }
  for (const auto& entry : tap_table()) {
    std::cout << entry.width << ": ";
    for (std::size_t i = 0; i < entry.taps.size(); ++i) std::cout << (i ? "," : "") << entry.taps[i];
    std::cout << (entry.primitive_verified ? "" : "  (irreducible, primitivity unverified)")
              << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LFSR generator, randomness battery and time-tag model"};
  app.require_subcommand(1);
  app.set_version_flag("--version", LFSRNG_VERSION);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a variant's output bits");
  generate->add_option("--variant", gen.variant, "Variant spec file or inline spec")->required();
  generate->add_option("--bits", gen.bits, "Number of bits")->required();
  generate->add_option("--out", gen.out, "Output file")->required();
  generate->add_option("--format", gen.format, "packed|ascii");
  generate->add_option("--seed", gen.seed, "Hex base seed; leg i gets base + i");
  generate->add_flag("--fresh-seed", gen.fresh_seed, "Draw a base seed from the OS");

  TestArgs tst;
  auto* test = app.add_subcommand("test", "Run the test battery on a bit file");
  test->add_option("--in", tst.in, "Input bit file")->required();
  test->add_option("--format", tst.format, "packed|ascii");
  test->add_option("--alpha", tst.alpha, "Significance level");
  test->add_option("--lct-block", tst.lct_block, "Linear complexity block length");
  test->add_option("--sequences", tst.sequences, "Split input into k sequences");
  test->add_option("--bits", tst.bits, "Bits per sequence (default: input / k)");
  test->add_option("--mode", tst.mode, "single|proportion");
  test->add_option("--tests", tst.tests, "Subset of tests to run");
  test->add_flag("--no-cap", tst.no_cap, "Keep serial/approximate_entropy sizes uncapped");
  test->add_flag("--strict", tst.strict, "Exit 1 when any test fails");
  test->add_option("--threads", tst.threads, "Worker threads (0 = all cores)");
  test->add_option("--out", tst.out, "Report prefix (.txt, .csv, .manifest.json)");

  ReproduceArgs rep;
  auto* reproduce = app.add_subcommand("reproduce", "Regenerate the result tables");
  reproduce->add_option("--table", rep.tables, "T1 T2 T3 T4 T6 T7 or all");
  reproduce->add_option("--scale", rep.scale, "desk|full");
  reproduce->add_option("--alpha", rep.alpha, "Significance level");
  reproduce->add_option("--lct-block", rep.lct_block, "Linear complexity block length");
  reproduce->add_option("--seed", rep.seed, "Hex base seed for every row");
  reproduce->add_flag("--large", rep.large, "Also scan XOR(785,786) at M=3100 and M=3200");
  reproduce->add_option("--large-blocks", rep.large_blocks, "Blocks per block length");
  reproduce->add_flag("--strict", rep.strict, "Exit 1 when an LCT verdict differs");
  reproduce->add_option("--threads", rep.threads, "Worker threads (0 = all cores)");
  reproduce->add_option("--out", rep.out, "Write the tables to this file");

  TimetagArgs tt;
  auto* timetag = app.add_subcommand("timetag", "Time-tag codec and demultiplexer");
  timetag->require_subcommand(1);
  auto add_codec = [&tt](CLI::App* cmd) {
    cmd->add_option("--clock-hz", tt.clock_hz, "Clock frequency");
    cmd->add_option("--window-ps", tt.window_ps, "Coincidence half-width (0 = period/4)");
  };
  auto* encode = timetag->add_subcommand("encode", "Bits to clock/random tags (CSV)");
  encode->add_option("--in", tt.in)->required();
  encode->add_option("--out", tt.out)->required();
  encode->add_option("--format", tt.format, "Input bit format");
  add_codec(encode);
  encode->add_option("--jitter-ps", tt.jitter_ps, "Per-slot timebase jitter sigma");
  encode->add_option("--skew-ps", tt.skew_ps, "Independent random-tag jitter sigma");
  encode->add_option("--noise-seed", tt.noise_seed, "Seed for jitter draws");
  auto* decode = timetag->add_subcommand("decode", "Tags (CSV) to bits");
  decode->add_option("--in", tt.in)->required();
  decode->add_option("--out", tt.out)->required();
  decode->add_option("--format", tt.format, "Output bit format");
  add_codec(decode);
  auto* demux = timetag->add_subcommand("demux", "Bit pairs to H/V/D/A symbols");
  demux->add_option("--in", tt.in)->required();
  demux->add_option("--out", tt.out)->required();
  demux->add_option("--format", tt.format, "Input bit format");
  demux->add_option("--symbol-format", tt.symbol_format, "text|packed");

  std::optional<unsigned> tap_width;
  auto* taps = app.add_subcommand("taps", "List the primitive tap table");
  taps->add_option("--width", tap_width, "Show one width");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitSpec;
  }

  try {
    if (generate->parsed()) return run_generate(gen);
    if (test->parsed()) return run_test(tst);
    if (reproduce->parsed()) return run_reproduce(rep);
    if (encode->parsed()) return run_encode(tt);
    if (decode->parsed()) return run_decode(tt);
    if (demux->parsed()) return run_demux(tt);
    if (taps->parsed()) return run_taps(tap_width);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSpec;
  }
  return kExitSpec;
}
