#include "lfsrng/battery.hpp"

#include <algorithm>
#include <cmath>

#include "lfsrng/error.hpp"
#include "lfsrng/parallel.hpp"

namespace lfsrng {
namespace {

BatteryReport assemble(const BatteryConfig& config, const TestParams& params,
                       std::vector<std::vector<TestResult>> results) {
  BatteryReport report;
  report.config = config;
  report.params = params;
  report.interval = proportion_interval(params.alpha, results.size());
  report.results = std::move(results);

  const std::size_t k = report.results.size();
  for (std::size_t t = 0; t < config.tests.size(); ++t) {
    const TestId id = config.tests[t];
    for (std::size_t j = 0; j < p_value_count(id); ++j) {
      ProportionRow row;
      row.id = id;
      row.p_index = j;
      row.label = p_value_label(id, j);
      row.total = k;
      for (const auto& seq : report.results) {
        if (seq[t].p_values.at(j) >= params.alpha) ++row.passed;
      }
      row.proportion = static_cast<double>(row.passed) / static_cast<double>(k);
      row.pass = config.mode == VerdictMode::SingleSequence
                     ? row.passed == k
                     : row.proportion >= report.interval.lo;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace

std::string_view to_string(VerdictMode mode) {
  return mode == VerdictMode::SingleSequence ? "single" : "proportion";
}

VerdictMode parse_verdict_mode(std::string_view name) {
  if (name == "single") return VerdictMode::SingleSequence;
  if (name == "proportion") return VerdictMode::Proportion;
  throw SpecError("unknown verdict mode '" + std::string(name) + "' (single|proportion)");
}

void BatteryConfig::validate() const {
  if (!(params.alpha > 0.0 && params.alpha < 1.0)) throw SpecError("alpha must lie in (0, 1)");
  if (sequence_length == 0) throw SpecError("sequence length must be positive");
  if (sequence_count == 0) throw SpecError("sequence count must be positive");
  if (mode == VerdictMode::SingleSequence && sequence_count != 1) {
    throw SpecError("single-sequence verdicts need exactly one sequence, got " +
                    std::to_string(sequence_count) + "; use proportion mode");
  }
  if (tests.empty()) throw SpecError("no tests selected");
  const TestParams p = effective_params();
  for (TestId id : tests) {
    const std::size_t need = min_length(id, p);
    if (sequence_length < need) {
      throw LengthError(std::string(lfsrng::to_string(id)) + " needs sequences of at least " +
                            std::to_string(need) + " bits, got " +
                            std::to_string(sequence_length),
                        need, sequence_length);
    }
  }
}

TestParams BatteryConfig::effective_params() const {
  return cap_pattern_sizes ? params.capped_for(sequence_length) : params;
}

Interval proportion_interval(double alpha, std::size_t k) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw SpecError("alpha must lie in (0, 1)");
  if (k == 0) throw SpecError("sequence count must be positive");
  const double centre = 1.0 - alpha;
  const double half = 3.0 * std::sqrt(alpha * (1.0 - alpha) / static_cast<double>(k));
  return {centre - half, centre + half};
}

bool BatteryReport::ran(TestId id) const {
  return std::find(config.tests.begin(), config.tests.end(), id) != config.tests.end();
}

bool BatteryReport::test_pass(TestId id) const {
  bool any = false;
  for (const auto& row : rows) {
    if (row.id != id) continue;
    any = true;
    if (!row.pass) return false;
  }
  return any;
}

std::size_t BatteryReport::subset_ran() const {
  return static_cast<std::size_t>(std::count_if(
      config.tests.begin(), config.tests.end(),
      [](TestId id) { return id != TestId::LinearComplexity; }));
}

std::size_t BatteryReport::subset_passed() const {
  return static_cast<std::size_t>(
      std::count_if(config.tests.begin(), config.tests.end(), [this](TestId id) {
        return id != TestId::LinearComplexity && test_pass(id);
      }));
}

bool BatteryReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const ProportionRow& r) { return r.pass; });
}

double BatteryReport::individual_failure_rate() const {
  std::size_t failed = 0;
  std::size_t total = 0;
  for (const auto& row : rows) {
    failed += row.total - row.passed;
    total += row.total;
  }
  return total == 0 ? 0.0 : static_cast<double>(failed) / static_cast<double>(total);
}

BatteryReport run_battery(const BitStream& stream, const BatteryConfig& config) {
  config.validate();
  const std::size_t k = config.sequence_count;
  const std::size_t n = config.sequence_length;
  if (stream.size() / n < k) {
    throw LengthError("battery needs " + std::to_string(k) + " x " + std::to_string(n) + " = " +
                          std::to_string(k * n) + " bits, got " + std::to_string(stream.size()),
                      k * n, stream.size());
  }
  const TestParams params = config.effective_params();
  std::vector<std::vector<TestResult>> results(k);
  parallel_for(k, params.threads, [&](std::size_t s) {
    std::vector<std::uint8_t> bits(n);
    stream.unpack_into(bits, s * n);
    TestParams inner = params;
    inner.threads = 1;
    auto& out = results[s];
    out.reserve(config.tests.size());
    for (TestId id : config.tests) {
      if (id == TestId::LinearComplexity) {
        out.push_back(run_single_test(id, stream.slice(s * n, n), inner));
      } else {
        out.push_back(run_single_test(id, std::span<const std::uint8_t>(bits), inner));
      }
    }
  });
  return assemble(config, params, std::move(results));
}

BatteryReport run_battery(std::span<const BitStream> sequences, BatteryConfig config) {
  config.sequence_count = sequences.size();
  config.validate();
  const std::size_t n = config.sequence_length;
  for (std::size_t s = 0; s < sequences.size(); ++s) {
    if (sequences[s].size() < n) {
      throw LengthError("sequence " + std::to_string(s) + " has " +
                            std::to_string(sequences[s].size()) + " bits, battery needs " +
                            std::to_string(n),
                        n, sequences[s].size());
    }
  }
  BitStream joined;
  joined.reserve(n * sequences.size());
  for (const auto& seq : sequences) joined.append(seq.size() == n ? seq : seq.slice(0, n));
  return run_battery(joined, config);
}

}  // namespace lfsrng
