#include <algorithm>
#include <string>

#include "lfsrng/error.hpp"
#include "lfsrng/lfsr.hpp"

namespace lfsrng {
namespace {

// Connection polynomials C(x) = 1 + sum x^t over the listed taps.
//
// Widths up to 168 come from the Xilinx XAPP052 maximal-length table
// ("Efficient Shift Registers, LFSR Counters, and Long Pseudo-Random
// Sequence Generators"). Each is primitive; tests/tap_table_test.cpp
// re-proves it by checking the multiplicative order of x against the
// complete factorization of 2^d - 1.
//
// 785 and 786 are low-weight polynomials proven irreducible (Rabin test,
// also in tests). Without a complete factorization of 2^d - 1 their
// primitivity is unproven, so they are flagged. Irreducibility already fixes
// the linear complexity of every nonzero output sequence at d.
const std::vector<TapEntry>& entries() {
  static const std::vector<TapEntry> table = {
      {2, {2, 1}, true},                  // 1 + x + x^2
      {3, {3, 2}, true},                  // 1 + x^2 + x^3
      {4, {4, 3}, true},                  // 1 + x^3 + x^4
      {5, {5, 3}, true},                  // 1 + x^3 + x^5
      {6, {6, 5}, true},                  // 1 + x^5 + x^6
      {7, {7, 6}, true},                  // 1 + x^6 + x^7
      {8, {8, 6, 5, 4}, true},            // 1 + x^4 + x^5 + x^6 + x^8
      {9, {9, 5}, true},                  // 1 + x^5 + x^9
      {10, {10, 7}, true},                // 1 + x^7 + x^10
      {11, {11, 9}, true},                // 1 + x^9 + x^11
      {12, {12, 6, 4, 1}, true},          // 1 + x + x^4 + x^6 + x^12
      {13, {13, 4, 3, 1}, true},          // 1 + x + x^3 + x^4 + x^13
      {14, {14, 5, 3, 1}, true},          // 1 + x + x^3 + x^5 + x^14
      {15, {15, 14}, true},               // 1 + x^14 + x^15
      {16, {16, 15, 13, 4}, true},        // 1 + x^4 + x^13 + x^15 + x^16
      {17, {17, 14}, true},               // 1 + x^14 + x^17
      {24, {24, 23, 22, 17}, true},       // 1 + x^17 + x^22 + x^23 + x^24
      {25, {25, 22}, true},               // 1 + x^22 + x^25
      {32, {32, 22, 2, 1}, true},         // 1 + x + x^2 + x^22 + x^32
      {33, {33, 20}, true},               // 1 + x^20 + x^33
      {64, {64, 63, 61, 60}, true},       // 1 + x^60 + x^61 + x^63 + x^64
      {65, {65, 47}, true},               // 1 + x^47 + x^65
      {113, {113, 104}, true},            // 1 + x^104 + x^113
      {127, {127, 126}, true},            // 1 + x^126 + x^127
      {128, {128, 126, 101, 99}, true},   // 1 + x^99 + x^101 + x^126 + x^128
      {129, {129, 124}, true},            // 1 + x^124 + x^129
      {131, {131, 130, 84, 83}, true},    // 1 + x^83 + x^84 + x^130 + x^131
      {785, {785, 693}, false},           // 1 + x^693 + x^785, irreducible
      {786, {786, 785, 784, 668}, false}, // 1 + x^668 + x^784 + x^785 + x^786, irreducible
  };
  return table;
}

}  // namespace

std::span<const TapEntry> tap_table() { return entries(); }

std::vector<unsigned> primitive_taps(unsigned width) {
  const auto& table = entries();
  const auto it = std::find_if(table.begin(), table.end(),
                               [width](const TapEntry& e) { return e.width == width; });
  if (it == table.end()) {
    throw SpecError("no tap entry for width " + std::to_string(width));
  }
  return it->taps;
}

}  // namespace lfsrng
