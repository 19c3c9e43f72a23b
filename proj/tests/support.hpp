#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lfsrng/bit_stream.hpp"

namespace lfsrng::test_support {

/// SplitMix64 words, 64 bits each, least significant bit first. Same stream
/// as splitmix64_bits() in oracles/nist_reference.py.
inline BitStream splitmix64_stream(std::uint64_t seed, std::size_t n) {
  BitStream out;
  out.reserve(n);
  std::uint64_t state = seed;
  while (out.size() < n) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    const std::size_t take = std::min<std::size_t>(64, n - out.size());
    out.append_word(z, static_cast<unsigned>(take));
  }
  return out;
}

inline BitStream mt_stream(std::mt19937_64& rng, std::size_t n) {
  BitStream out;
  out.reserve(n);
  while (out.size() < n) {
    const std::size_t take = std::min<std::size_t>(64, n - out.size());
    out.append_word(rng(), static_cast<unsigned>(take));
  }
  return out;
}

inline std::vector<std::uint8_t> bits_of(const std::string& text) {
  return BitStream::from_string(text).unpack();
}

}  // namespace lfsrng::test_support
