#pragma once

#include <iosfwd>
#include <string>

#include "lfsrng/battery.hpp"

namespace lfsrng {

/// Human-readable table: one row per p-value with passed/k, proportion and
/// verdict, followed by the NOT RUN list and the summary line.
void write_battery_table(std::ostream& out, const BatteryReport& report);

/// Machine lines. Header `test_id,seq_index,p_value,verdict`, one line per
/// (p-value label, sequence), then
/// `SUMMARY,<label>,<passed>,<k>,<proportion>,<lo>,<hi>,<verdict>` per row
/// and `NOT_RUN,<test>` per omitted test.
void write_battery_csv(std::ostream& out, const BatteryReport& report);

/// "NIST-subset: PASS (9/9), LCT: FAIL".
std::string summary_line(const BatteryReport& report);

}  // namespace lfsrng
