#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lfsrng {

/// Ordered bit sequence stored packed, 64 bits per word.
///
/// Bit i lives in word i / 64 at position i % 64, so the first bit of the
/// stream is the least significant bit of the first word (and of the first
/// byte once persisted). Bits past size() are always zero.
class BitStream {
 public:
  BitStream() = default;
  explicit BitStream(std::size_t n) : words_((n + 63) / 64, 0), size_(n) {}

  /// Parses '0'/'1' characters; whitespace is skipped, anything else throws.
  static BitStream from_string(std::string_view text);
  static BitStream from_bits(std::span<const std::uint8_t> bits);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool operator[](std::size_t i) const noexcept {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i, bool value) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= bit;
    } else {
      words_[i >> 6] &= ~bit;
    }
  }

  void reserve(std::size_t bits) { words_.reserve((bits + 63) / 64); }
  void push_back(bool value);
  /// Appends the low `count` bits of `word`, least significant first.
  void append_word(std::uint64_t word, unsigned count);
  void append(const BitStream& other);

  BitStream slice(std::size_t first, std::size_t count) const;
  std::size_t count_ones() const noexcept;

  /// One byte (0 or 1) per bit; the layout every statistical test reads.
  std::vector<std::uint8_t> unpack() const;
  void unpack_into(std::span<std::uint8_t> out, std::size_t first = 0) const;
  std::string to_string() const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  friend bool operator==(const BitStream&, const BitStream&) = default;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

enum class BitFormat { Packed, Ascii };

/// Packed form: 8-byte little-endian bit count, then ceil(n/8) bytes,
/// LSB-first within each byte, final partial byte zero-padded.
void write_packed(std::ostream& out, const BitStream& bits);
BitStream read_packed(std::istream& in);

/// ASCII form: '0'/'1' characters; newlines are ignored on read.
void write_ascii(std::ostream& out, const BitStream& bits);
BitStream read_ascii(std::istream& in);

void save_bits(const std::filesystem::path& path, const BitStream& bits, BitFormat format);
BitStream load_bits(const std::filesystem::path& path, BitFormat format);

BitFormat parse_bit_format(std::string_view name);

}  // namespace lfsrng
