#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lfsrng/battery.hpp"
#include "lfsrng/combine.hpp"
#include "lfsrng/timetag.hpp"

namespace lfsrng {

enum class TableId { T1, T2, T3, T4, T6, T7 };

std::string_view to_string(TableId id);
TableId parse_table_id(std::string_view name);
const std::vector<TableId>& all_tables();

enum class Scale { Desk, Full };

std::string_view to_string(Scale scale);
Scale parse_scale(std::string_view name);

struct ScaleSpec {
  std::size_t sequences;
  std::size_t length;
};

/// desk: 10 x 100000 bits, full: 55 x 1000000 bits.
ScaleSpec scale_spec(Scale scale);

struct ReproduceOptions {
  Scale scale = Scale::Desk;
  double alpha = 0.01;
  std::size_t lct_block = 500;
  unsigned threads = 1;
  /// Leg i of every row uses short seed seed_base + i.
  std::uint64_t seed_base = 1;
  /// Codec used by the shuffle tables; every set goes encode -> decode.
  CodecParams codec;
  std::uint64_t noise_seed = 0;
};

struct ReproduceRow {
  std::string label;
  GeneratorVariant variant;
  std::string concatenation;  // shuffle tables only
  std::size_t subset_passed = 0;
  std::size_t subset_ran = 0;
  bool subset_pass = false;
  bool lct_pass = false;
  double failure_rate = 0.0;
  std::size_t decode_errors = 0;  // shuffle tables only
  bool published_subset = false;
  bool published_lct = false;
};

struct ReproduceTable {
  TableId id = TableId::T1;
  std::string title;
  ScaleSpec scale{};
  std::vector<ReproduceRow> rows;

  /// LCT verdicts all equal the published ones.
  bool lct_matches() const;
  std::size_t subset_mismatches() const;
};

ReproduceTable reproduce_table(TableId id, const ReproduceOptions& options);

/// Row layout of the result tables, with a diff column against the published verdicts.
void write_table(std::ostream& out, const ReproduceTable& table);

/// Per-block linear complexities of XOR(L(785), L(786)) for each block
/// length, `blocks` consecutive blocks each (the stream starts at bit 0).
struct BlockComplexityScan {
  std::size_t block_length = 0;
  std::vector<std::size_t> complexities;

  bool constant() const;
};

std::vector<BlockComplexityScan> outlook_scan(const std::vector<std::size_t>& block_lengths,
                                              std::size_t blocks, std::uint64_t seed_base = 1,
                                              unsigned threads = 1);

void write_outlook_scan(std::ostream& out, const std::vector<BlockComplexityScan>& scans);

}  // namespace lfsrng
