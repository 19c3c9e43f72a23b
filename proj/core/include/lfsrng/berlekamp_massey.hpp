#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lfsrng/bit_stream.hpp"

namespace lfsrng {

/// Shortest LFSR generating a sequence.
///
/// connection[0] == 1 and, for every n >= complexity,
/// s[n] == XOR_{j=1..L} connection[j] & s[n - j].
struct LinearComplexityProfile {
  std::size_t complexity = 0;
  std::vector<std::uint8_t> connection{1};
};

/// Incremental Berlekamp-Massey over GF(2), bit-sliced into 64-bit words.
/// Each push costs O(n / 64).
class BerlekampMassey {
 public:
  explicit BerlekampMassey(std::size_t capacity_hint = 0);

  void push(bool bit);
  std::size_t complexity() const noexcept { return complexity_; }
  std::size_t length() const noexcept { return n_; }
  LinearComplexityProfile profile() const;

 private:
  void grow(std::size_t words);

  std::vector<std::uint64_t> window_;  // bit j = s[n - 1 - j]
  std::vector<std::uint64_t> c_;
  std::vector<std::uint64_t> b_;
  std::vector<std::uint64_t> scratch_;
  std::size_t complexity_ = 0;
  std::size_t n_ = 0;
  std::size_t last_change_ = 0;  // n at the last length change, plus one
};

LinearComplexityProfile berlekamp_massey(std::span<const std::uint8_t> bits);
LinearComplexityProfile berlekamp_massey(const BitStream& bits);

/// Complexity only; the hot path for blockwise testing.
std::size_t linear_complexity(std::span<const std::uint8_t> bits);

/// L after each prefix: result[i] is the complexity of bits[0..i].
std::vector<std::size_t> linear_complexity_profile(const BitStream& bits);

}  // namespace lfsrng
