#include "lfsrng/reproduce.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "lfsrng/error.hpp"
#include "lfsrng/linear_complexity_test.hpp"

namespace lfsrng {
namespace {

struct RowSpec {
  std::vector<unsigned> widths;
  bool published_subset;
  bool published_lct;
};

const char* word(bool pass) { return pass ? "PASS" : "FAIL"; }

BatteryConfig battery_config(const ReproduceOptions& options, ScaleSpec scale) {
  BatteryConfig config;
  config.params.alpha = options.alpha;
  config.params.linear_complexity_block = options.lct_block;
  config.params.threads = options.threads;
  config.sequence_count = scale.sequences;
  config.sequence_length = scale.length;
  config.mode = scale.sequences == 1 ? VerdictMode::SingleSequence : VerdictMode::Proportion;
  return config;
}

void fill_verdicts(ReproduceRow& row, const BatteryReport& report) {
  row.subset_passed = report.subset_passed();
  row.subset_ran = report.subset_ran();
  row.subset_pass = report.subset_pass();
  row.lct_pass = report.test_pass(TestId::LinearComplexity);
  row.failure_rate = report.individual_failure_rate();
}

GeneratorVariant make_variant(TableId id, const std::vector<unsigned>& widths,
                              std::uint64_t seed_base) {
  const SeedSpec s1 = SeedSpec::short_seed(seed_base);
  const SeedSpec s2 = SeedSpec::short_seed(seed_base + 1);
  if (id == TableId::T1) return GeneratorVariant::single(widths[0], s1);
  if (id == TableId::T2) return GeneratorVariant::xor_same_width(widths[0], s1, s2);
  return GeneratorVariant::xor_two_widths(widths[0], s1, widths[1], s2);
}

std::vector<RowSpec> row_specs(TableId id) {
  switch (id) {
    case TableId::T1:
    case TableId::T2:
      return {{{8}, false, false},  {{16}, false, false}, {{24}, false, false},
              {{32}, false, false}, {{64}, false, false}, {{128}, true, false}};
    case TableId::T3:
      return {{{8, 9}, false, false},  {{16, 17}, false, false}, {{24, 25}, true, false},
              {{32, 33}, true, false}, {{64, 65}, true, false},  {{128, 129}, true, true}};
    case TableId::T4:
      return {{{3, 5}, false, false},   {{5, 7}, false, false},    {{7, 11}, true, false},
              {{11, 13}, true, false},  {{113, 127}, true, false}, {{127, 131}, true, true}};
    case TableId::T6:
      return {{{128, 129}, true, true}};
    case TableId::T7:
      return {{{127, 131}, true, true}};
  }
  return {};
}

std::string row_label(const std::vector<unsigned>& widths) {
  std::string s;
  for (std::size_t i = 0; i < widths.size(); ++i) {
    if (i != 0) s += " & ";
    s += std::to_string(widths[i]);
  }
  return s;
}

ReproduceTable shuffle_table(TableId id, const ReproduceOptions& options) {
  ReproduceTable table;
  table.id = id;
  table.scale = scale_spec(options.scale);
  const auto spec = row_specs(id).front();
  const GeneratorVariant variant = make_variant(id, spec.widths, options.seed_base);
  table.title = "Shufflings of " + variant.label();

  const ScaleSpec scale = table.scale;
  const BatteryConfig config = battery_config(options, scale);

  // One long run split into recorded sets, each passed through the codec.
  VariantGenerator generator(variant);
  std::vector<BitStream> sets;
  std::size_t decode_errors = 0;
  BitStream direct;
  direct.reserve(scale.sequences * scale.length);
  for (std::size_t i = 0; i < scale.sequences; ++i) {
    BitStream set = generator.generate(scale.length);
    direct.append(set);
    const auto tags = encode_bits_to_tags(set, options.codec, options.noise_seed + i);
    DecodeResult decoded = decode_tags_to_bits(tags, options.codec);
    if (decoded.bits.size() != set.size()) {
      throw Error("codec changed set length: " + std::to_string(set.size()) + " -> " +
                  std::to_string(decoded.bits.size()));
    }
    for (std::size_t b = 0; b < set.size(); ++b) decode_errors += decoded.bits[b] != set[b];
    sets.push_back(std::move(decoded.bits));
  }

  std::vector<std::pair<std::string, ShuffleMode>> modes = {{"Serial", ShuffleMode::serial()},
                                                            {"Reverse", ShuffleMode::reverse()}};
  for (std::uint64_t k = 1; k <= 5; ++k) {
    modes.emplace_back("Random-" + std::to_string(k), ShuffleMode::random(k));
  }
  for (const auto& [name, mode] : modes) {
    ReproduceRow row;
    row.label = name;
    row.variant = variant;
    row.concatenation = mode.to_string();
    row.decode_errors = decode_errors;
    row.published_subset = spec.published_subset;
    row.published_lct = spec.published_lct;
    fill_verdicts(row, run_battery(shuffle_concat(sets, mode), config));
    table.rows.push_back(std::move(row));
  }
  ReproduceRow none;
  none.label = "None";
  none.variant = variant;
  none.concatenation = "direct";
  none.published_subset = spec.published_subset;
  none.published_lct = spec.published_lct;
  fill_verdicts(none, run_battery(direct, config));
  table.rows.push_back(std::move(none));
  return table;
}

}  // namespace

std::string_view to_string(TableId id) {
  static constexpr std::string_view names[] = {"T1", "T2", "T3", "T4", "T6", "T7"};
  return names[static_cast<int>(id)];
}

TableId parse_table_id(std::string_view name) {
  for (TableId id : all_tables()) {
    if (to_string(id) == name) return id;
  }
  throw SpecError("unknown table '" + std::string(name) + "' (T1|T2|T3|T4|T6|T7)");
}

const std::vector<TableId>& all_tables() {
  static const std::vector<TableId> ids = {TableId::T1, TableId::T2, TableId::T3,
                                           TableId::T4, TableId::T6, TableId::T7};
  return ids;
}

std::string_view to_string(Scale scale) { return scale == Scale::Desk ? "desk" : "full"; }

Scale parse_scale(std::string_view name) {
  if (name == "desk") return Scale::Desk;
  if (name == "full") return Scale::Full;
  throw SpecError("unknown scale '" + std::string(name) + "' (desk|full)");
}

ScaleSpec scale_spec(Scale scale) {
  return scale == Scale::Desk ? ScaleSpec{10, 100'000} : ScaleSpec{55, 1'000'000};
}

bool ReproduceTable::lct_matches() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const ReproduceRow& r) { return r.lct_pass == r.published_lct; });
}

std::size_t ReproduceTable::subset_mismatches() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const ReproduceRow& r) {
    return r.subset_pass != r.published_subset;
  }));
}

ReproduceTable reproduce_table(TableId id, const ReproduceOptions& options) {
  if (id == TableId::T6 || id == TableId::T7) return shuffle_table(id, options);

  ReproduceTable table;
  table.id = id;
  table.scale = scale_spec(options.scale);
  switch (id) {
    case TableId::T1:
      table.title = "L(d,s)";
      break;
    case TableId::T2:
      table.title = "XOR(L(d,s1), L(d,s2))";
      break;
    case TableId::T3:
      table.title = "XOR(L(d1,s1), L(d2,s2)), consecutive widths";
      break;
    default:
      table.title = "XOR(L(d1,s1), L(d2,s2)), consecutive prime widths";
      break;
  }
  const BatteryConfig config = battery_config(options, table.scale);
  const std::size_t total = table.scale.sequences * table.scale.length;
  for (const RowSpec& spec : row_specs(id)) {
    ReproduceRow row;
    row.label = row_label(spec.widths);
    row.variant = make_variant(id, spec.widths, options.seed_base);
    row.published_subset = spec.published_subset;
    row.published_lct = spec.published_lct;
    fill_verdicts(row, run_battery(variant_stream(row.variant, total), config));
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_table(std::ostream& out, const ReproduceTable& table) {
  const bool shuffle = table.id == TableId::T6 || table.id == TableId::T7;
  out << to_string(table.id) << ": " << table.title << " (" << table.scale.sequences << " x "
      << table.scale.length << " bits)\n";
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-12s %-18s %-10s %-6s %-16s %s\n",
                shuffle ? "concat" : "widths", "NIST-subset", "LCT", "fail%", "published",
                "LCT diff");
  out << buf;
  for (const auto& row : table.rows) {
    const std::string subset = std::string(word(row.subset_pass)) + " (" +
                               std::to_string(row.subset_passed) + "/" +
                               std::to_string(row.subset_ran) + ")";
    const std::string published =
        std::string(word(row.published_subset)) + "/" + word(row.published_lct);
    std::snprintf(buf, sizeof buf, "%-12s %-18s %-10s %-6.2f %-16s %s\n", row.label.c_str(),
                  subset.c_str(), word(row.lct_pass), 100.0 * row.failure_rate,
                  published.c_str(), row.lct_pass == row.published_lct ? "match" : "MISMATCH");
    out << buf;
  }
  if (shuffle && !table.rows.empty()) {
    out << "codec bit errors: " << table.rows.front().decode_errors << '\n';
  }
  out << "LCT column: " << (table.lct_matches() ? "matches" : "DIFFERS")
      << "; subset column differs in " << table.subset_mismatches()
      << " row(s) (informational: published column covers all 15 tests)\n";
}

bool BlockComplexityScan::constant() const {
  return std::adjacent_find(complexities.begin(), complexities.end(),
                            std::not_equal_to<>()) == complexities.end();
}

std::vector<BlockComplexityScan> outlook_scan(const std::vector<std::size_t>& block_lengths,
                                              std::size_t blocks, std::uint64_t seed_base,
                                              unsigned threads) {
  if (blocks == 0) throw SpecError("block count must be positive");
  const GeneratorVariant variant = GeneratorVariant::xor_two_widths(
      785, SeedSpec::short_seed(seed_base), 786, SeedSpec::short_seed(seed_base + 1));
  std::size_t longest = 0;
  for (std::size_t m : block_lengths) longest = std::max(longest, m);
  const BitStream stream = variant_stream(variant, longest * blocks);
  std::vector<BlockComplexityScan> scans;
  for (std::size_t m : block_lengths) {
    scans.push_back({m, block_complexities(stream, m, blocks, threads)});
  }
  return scans;
}

void write_outlook_scan(std::ostream& out, const std::vector<BlockComplexityScan>& scans) {
  out << "XOR(L(785), L(786)) per-block linear complexity\n";
  for (const auto& scan : scans) {
    const auto [lo, hi] = std::minmax_element(scan.complexities.begin(), scan.complexities.end());
    out << "M=" << scan.block_length << ": min " << *lo << ", max " << *hi
        << (scan.constant() ? " (constant)" : " (varies)") << ":";
    for (std::size_t l : scan.complexities) out << ' ' << l;
    out << '\n';
  }
}

}  // namespace lfsrng
