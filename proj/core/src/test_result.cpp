#include "lfsrng/test_result.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>

#include "lfsrng/error.hpp"

namespace lfsrng {
namespace {

constexpr std::array<std::string_view, 10> kNames = {
    "frequency", "block_frequency", "runs",           "longest_run",     "rank",
    "dft",       "serial",          "approximate_entropy", "cumulative_sums", "linear_complexity"};

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string_view to_string(TestId id) { return kNames.at(static_cast<std::size_t>(id)); }

TestId parse_test_id(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<TestId>(i);
  }
  throw SpecError("unknown test '" + std::string(name) + "'");
}

const std::vector<TestId>& all_tests() {
  static const std::vector<TestId> tests = {
      TestId::Frequency, TestId::BlockFrequency,     TestId::Runs,
      TestId::LongestRun, TestId::Rank,              TestId::Dft,
      TestId::Serial,     TestId::ApproximateEntropy, TestId::CumulativeSums,
      TestId::LinearComplexity};
  return tests;
}

const std::vector<std::string_view>& tests_not_run() {
  static const std::vector<std::string_view> names = {
      "non_overlapping_template", "overlapping_template", "universal", "random_excursions",
      "random_excursions_variant"};
  return names;
}

std::size_t p_value_count(TestId id) {
  return id == TestId::Serial || id == TestId::CumulativeSums ? 2 : 1;
}

std::string p_value_label(TestId id, std::size_t index) {
  std::string base(to_string(id));
  if (id == TestId::Serial) return base + "." + std::to_string(index + 1);
  if (id == TestId::CumulativeSums) return base + (index == 0 ? ".forward" : ".backward");
  return base;
}

double TestResult::min_p() const {
  if (p_values.empty()) return std::numeric_limits<double>::quiet_NaN();
  return *std::min_element(p_values.begin(), p_values.end());
}

void TestResult::decide(double alpha) {
  for (double& p : p_values) p = std::clamp(p, 0.0, 1.0);
  pass = !p_values.empty() && min_p() >= alpha;
}

std::string format_result(const TestResult& result) {
  std::string line(to_string(result.id));
  for (const auto& [key, value] : result.parameters) line += " " + key + "=" + format_number(value);
  for (const auto& [key, value] : result.statistics) line += " " + key + "=" + format_number(value);
  for (std::size_t i = 0; i < result.p_values.size(); ++i) {
    line += " " + p_value_label(result.id, i) + ".p=" + format_number(result.p_values[i]);
  }
  if (result.discarded_bits != 0) line += " discarded=" + std::to_string(result.discarded_bits);
  if (!result.note.empty()) line += " (" + result.note + ")";
  line += result.pass ? " PASS" : " FAIL";
  return line;
}

}  // namespace lfsrng
