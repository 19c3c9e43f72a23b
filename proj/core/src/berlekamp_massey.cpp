#include "lfsrng/berlekamp_massey.hpp"

#include <algorithm>
#include <bit>

namespace lfsrng {

BerlekampMassey::BerlekampMassey(std::size_t capacity_hint) {
  grow(capacity_hint / 64 + 2);
  c_[0] = 1;
  b_[0] = 1;
}

void BerlekampMassey::grow(std::size_t words) {
  if (words <= window_.size()) return;
  window_.resize(words, 0);
  c_.resize(words, 0);
  b_.resize(words, 0);
  scratch_.resize(words, 0);
}

void BerlekampMassey::push(bool bit) {
  // Room for the shifted window and for B shifted by up to n + 1.
  if ((n_ + 2) / 64 + 2 > window_.size()) grow(2 * window_.size());

  const std::size_t used = n_ / 64 + 1;
  for (std::size_t w = used; w > 0; --w) {
    window_[w] = (window_[w] << 1) | (window_[w - 1] >> 63);
  }
  window_[0] = (window_[0] << 1) | (bit ? 1u : 0u);

  // Discrepancy: s[n] + sum_{j=1..L} c_j s[n-j] = parity(C & window).
  std::uint64_t acc = 0;
  const std::size_t c_words = complexity_ / 64 + 1;
  for (std::size_t w = 0; w < c_words; ++w) acc ^= c_[w] & window_[w];
  const bool discrepancy = std::popcount(acc) & 1;

  if (discrepancy) {
    const std::size_t shift = n_ + 1 - last_change_;
    const std::size_t word_shift = shift / 64;
    const unsigned bit_shift = shift % 64;
    const bool lengthen = 2 * complexity_ <= n_;
    if (lengthen) std::copy(c_.begin(), c_.end(), scratch_.begin());

    // C ^= B << shift. B has degree <= n - shift + 1, so the top is in range.
    const std::size_t b_words = std::min(b_.size(), (n_ + 1) / 64 + 1);
    for (std::size_t w = 0; w < b_words && w + word_shift < c_.size(); ++w) {
      c_[w + word_shift] ^= b_[w] << bit_shift;
      if (bit_shift != 0 && w + word_shift + 1 < c_.size()) {
        c_[w + word_shift + 1] ^= b_[w] >> (64 - bit_shift);
      }
    }
    if (lengthen) {
      complexity_ = n_ + 1 - complexity_;
      last_change_ = n_ + 1;
      std::swap(b_, scratch_);
    }
  }
  ++n_;
}

LinearComplexityProfile BerlekampMassey::profile() const {
  LinearComplexityProfile p;
  p.complexity = complexity_;
  p.connection.assign(complexity_ + 1, 0);
  for (std::size_t j = 0; j <= complexity_; ++j) {
    p.connection[j] = static_cast<std::uint8_t>((c_[j / 64] >> (j % 64)) & 1u);
  }
  return p;
}

LinearComplexityProfile berlekamp_massey(std::span<const std::uint8_t> bits) {
  BerlekampMassey bm(bits.size());
  for (std::uint8_t b : bits) bm.push(b != 0);
  return bm.profile();
}

LinearComplexityProfile berlekamp_massey(const BitStream& bits) {
  BerlekampMassey bm(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) bm.push(bits[i]);
  return bm.profile();
}

std::size_t linear_complexity(std::span<const std::uint8_t> bits) {
  BerlekampMassey bm(bits.size());
  for (std::uint8_t b : bits) bm.push(b != 0);
  return bm.complexity();
}

std::vector<std::size_t> linear_complexity_profile(const BitStream& bits) {
  std::vector<std::size_t> out;
  out.reserve(bits.size());
  BerlekampMassey bm(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    bm.push(bits[i]);
    out.push_back(bm.complexity());
  }
  return out;
}

}  // namespace lfsrng
