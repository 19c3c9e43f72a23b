#include "lfsrng/report.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace lfsrng {
namespace {

std::string fixed(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

const char* verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

}  // namespace

std::string summary_line(const BatteryReport& report) {
  std::string line = "NIST-subset: ";
  line += report.subset_pass() ? "PASS" : "FAIL";
  line += " (" + std::to_string(report.subset_passed()) + "/" +
          std::to_string(report.subset_ran()) + ")";
  if (report.ran(TestId::LinearComplexity)) {
    line += ", LCT: ";
    line += verdict(report.test_pass(TestId::LinearComplexity));
  }
  return line;
}

void write_battery_table(std::ostream& out, const BatteryReport& report) {
  const std::size_t k = report.results.size();
  out << "sequences: " << k << " x " << report.config.sequence_length << " bits, alpha "
      << report.params.alpha << ", verdict mode " << to_string(report.config.mode) << '\n';
  out << "parameters: block_frequency M=" << report.params.block_frequency_block
      << ", serial m=" << report.params.serial_block
      << ", approximate_entropy m=" << report.params.approximate_entropy_block
      << ", linear_complexity M=" << report.params.linear_complexity_block << '\n';
  if (report.config.mode == VerdictMode::Proportion) {
    out << "acceptance interval: [" << fixed(report.interval.lo, 7) << ", "
        << fixed(report.interval.hi, 7) << "] (pass iff proportion >= lower bound)\n";
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-28s %9s %10s %10s  %s\n", "test", "passed", "proportion",
                "min p", "verdict");
  out << buf;
  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    const auto& row = report.rows[r];
    const auto t = static_cast<std::size_t>(
        std::find(report.config.tests.begin(), report.config.tests.end(), row.id) -
        report.config.tests.begin());
    double min_p = 1.0;
    for (const auto& seq : report.results) min_p = std::min(min_p, seq[t].p_values[row.p_index]);
    const std::string passed = std::to_string(row.passed) + "/" + std::to_string(row.total);
    std::snprintf(buf, sizeof buf, "%-28s %9s %10.4f %10.6f  %s\n", row.label.c_str(),
                  passed.c_str(), row.proportion, min_p, verdict(row.pass));
    out << buf;
  }
  out << "NOT RUN:";
  for (std::size_t i = 0; i < tests_not_run().size(); ++i) {
    out << (i == 0 ? " " : ", ") << tests_not_run()[i];
  }
  out << '\n' << summary_line(report) << '\n';
}

void write_battery_csv(std::ostream& out, const BatteryReport& report) {
  out << "test_id,seq_index,p_value,verdict\n";
  for (const auto& row : report.rows) {
    const auto t = static_cast<std::size_t>(
        std::find(report.config.tests.begin(), report.config.tests.end(), row.id) -
        report.config.tests.begin());
    for (std::size_t s = 0; s < report.results.size(); ++s) {
      const double p = report.results[s][t].p_values[row.p_index];
      out << row.label << ',' << s << ',' << fixed(p, 12) << ','
          << verdict(p >= report.params.alpha) << '\n';
    }
  }
  for (const auto& row : report.rows) {
    out << "SUMMARY," << row.label << ',' << row.passed << ',' << row.total << ','
        << fixed(row.proportion, 6) << ',' << fixed(report.interval.lo, 7) << ','
        << fixed(report.interval.hi, 7) << ',' << verdict(row.pass) << '\n';
  }
  for (auto name : tests_not_run()) out << "NOT_RUN," << name << '\n';
}

}  // namespace lfsrng
