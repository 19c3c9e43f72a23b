#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lfsrng/bit_stream.hpp"
#include "lfsrng/stat_tests.hpp"
#include "lfsrng/test_result.hpp"

namespace lfsrng {

/// How a battery turns per-sequence p-values into a per-test verdict.
///  SingleSequence: k must be 1; a row passes iff p >= alpha.
///  Proportion: a row passes iff its pass proportion over k sequences is at
///  least the lower end of proportion_interval(alpha, k).
enum class VerdictMode { SingleSequence, Proportion };

std::string_view to_string(VerdictMode mode);
VerdictMode parse_verdict_mode(std::string_view name);

struct BatteryConfig {
  TestParams params;
  std::size_t sequence_length = 1'000'000;
  std::size_t sequence_count = 1;
  VerdictMode mode = VerdictMode::SingleSequence;
  /// Lower serial / approximate entropy pattern sizes to the recommended
  /// bounds for sequence_length (see TestParams::capped_for).
  bool cap_pattern_sizes = true;
  std::vector<TestId> tests = all_tests();

  void validate() const;
  /// Test parameters actually used for each sequence.
  TestParams effective_params() const;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// (1 - alpha) -+ 3 sqrt(alpha (1 - alpha) / k), unclamped.
Interval proportion_interval(double alpha, std::size_t k);

/// One p-value position of one test aggregated over all sequences.
struct ProportionRow {
  TestId id = TestId::Frequency;
  std::size_t p_index = 0;
  std::string label;
  std::size_t passed = 0;
  std::size_t total = 0;
  double proportion = 0.0;
  bool pass = false;
};

struct BatteryReport {
  BatteryConfig config;
  TestParams params;
  Interval interval;
  /// results[s][t]: sequence s, test config.tests[t].
  std::vector<std::vector<TestResult>> results;
  std::vector<ProportionRow> rows;

  /// A test passes when all of its rows pass.
  bool test_pass(TestId id) const;
  bool ran(TestId id) const;
  /// Tests other than linear_complexity that ran / passed.
  std::size_t subset_ran() const;
  std::size_t subset_passed() const;
  bool subset_pass() const { return subset_passed() == subset_ran(); }
  bool all_pass() const;
  /// Fraction of (sequence, p-value) pairs below alpha.
  double individual_failure_rate() const;
};

/// Splits the first k * n bits of `stream` into k sequences. Throws
/// LengthError stating the required length when the stream is too short.
BatteryReport run_battery(const BitStream& stream, const BatteryConfig& config);

/// Explicit sequences; each must hold at least config.sequence_length bits
/// (extra bits are ignored) and their count overrides sequence_count.
BatteryReport run_battery(std::span<const BitStream> sequences, BatteryConfig config);

}  // namespace lfsrng
