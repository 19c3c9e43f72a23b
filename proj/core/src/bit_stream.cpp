#include "lfsrng/bit_stream.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>

#include "lfsrng/error.hpp"

namespace lfsrng {

BitStream BitStream::from_string(std::string_view text) {
  BitStream out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '0':
        out.push_back(false);
        break;
      case '1':
        out.push_back(true);
        break;
      case ' ':
      case '\n':
      case '\r':
      case '\t':
        break;
      default:
        throw SpecError(std::string("invalid bit character '") + c + "'");
    }
  }
  return out;
}

BitStream BitStream::from_bits(std::span<const std::uint8_t> bits) {
  BitStream out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0) out.words_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  return out;
}

void BitStream::push_back(bool value) {
  if ((size_ & 63) == 0) words_.push_back(0);
  if (value) words_.back() |= std::uint64_t{1} << (size_ & 63);
  ++size_;
}

void BitStream::append_word(std::uint64_t word, unsigned count) {
  if (count == 0) return;
  if (count < 64) word &= (std::uint64_t{1} << count) - 1;
  const unsigned offset = size_ & 63;
  if (offset == 0) {
    words_.push_back(word);
  } else {
    words_.back() |= word << offset;
    if (offset + count > 64) words_.push_back(word >> (64 - offset));
  }
  size_ += count;
}

void BitStream::append(const BitStream& other) {
  reserve(size_ + other.size_);
  const std::size_t full = other.size_ / 64;
  for (std::size_t w = 0; w < full; ++w) append_word(other.words_[w], 64);
  if (const unsigned rest = other.size_ & 63; rest != 0) {
    append_word(other.words_[full], rest);
  }
}

BitStream BitStream::slice(std::size_t first, std::size_t count) const {
  if (first > size_ || count > size_ - first) {
    throw SpecError("bit stream slice out of range");
  }
  BitStream out;
  out.reserve(count);
  const unsigned shift = first & 63;
  std::size_t word = first >> 6;
  std::size_t left = count;
  while (left > 0) {
    const unsigned take = static_cast<unsigned>(std::min<std::size_t>(left, 64));
    std::uint64_t value = words_[word] >> shift;
    if (shift != 0 && word + 1 < words_.size()) value |= words_[word + 1] << (64 - shift);
    out.append_word(value, take);
    left -= take;
    ++word;
  }
  return out;
}

std::size_t BitStream::count_ones() const noexcept {
  std::size_t ones = 0;
  for (std::uint64_t w : words_) ones += static_cast<std::size_t>(std::popcount(w));
  return ones;
}

std::vector<std::uint8_t> BitStream::unpack() const {
  std::vector<std::uint8_t> out(size_);
  unpack_into(out, 0);
  return out;
}

void BitStream::unpack_into(std::span<std::uint8_t> out, std::size_t first) const {
  const std::size_t n = std::min(out.size(), size_ - std::min(first, size_));
  for (std::size_t i = 0; i < n; ++i) out[i] = (*this)[first + i] ? 1 : 0;
}

std::string BitStream::to_string() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if ((*this)[i]) out[i] = '1';
  }
  return out;
}

void write_packed(std::ostream& out, const BitStream& bits) {
  std::array<char, 8> header{};
  const std::uint64_t n = bits.size();
  for (int i = 0; i < 8; ++i) header[i] = static_cast<char>((n >> (8 * i)) & 0xff);
  out.write(header.data(), header.size());

  std::vector<char> bytes((bits.size() + 7) / 8);
  const auto words = bits.words();
  for (std::size_t b = 0; b < bytes.size(); ++b) {
    bytes[b] = static_cast<char>((words[b / 8] >> (8 * (b % 8))) & 0xff);
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing packed bit stream");
}

BitStream read_packed(std::istream& in) {
  std::array<unsigned char, 8> header{};
  in.read(reinterpret_cast<char*>(header.data()), header.size());
  if (in.gcount() != 8) throw IoError("packed bit file: missing 8-byte length header");
  std::uint64_t n = 0;
  for (int i = 0; i < 8; ++i) n |= std::uint64_t{header[i]} << (8 * i);

  const std::uint64_t byte_count = (n + 7) / 8;
  std::vector<unsigned char> bytes(byte_count);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(byte_count));
  if (static_cast<std::uint64_t>(in.gcount()) != byte_count) {
    throw IoError("packed bit file: truncated payload (header says " + std::to_string(n) +
                  " bits)");
  }
  if (in.peek() != std::istream::traits_type::eof()) {
    throw IoError("packed bit file: trailing bytes after payload");
  }
  if (const unsigned rest = n % 8; rest != 0 && (bytes.back() >> rest) != 0) {
    throw IoError("packed bit file: nonzero padding bits");
  }

  BitStream out;
  out.reserve(n);
  for (std::uint64_t b = 0; b < byte_count; ++b) {
    const unsigned count = (b + 1 == byte_count && n % 8 != 0) ? n % 8 : 8;
    out.append_word(bytes[b], count);
  }
  return out;
}

void write_ascii(std::ostream& out, const BitStream& bits) {
  out << bits.to_string() << '\n';
  if (!out) throw IoError("failed writing ascii bit stream");
}

BitStream read_ascii(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  try {
    return BitStream::from_string(text);
  } catch (const SpecError& e) {
    throw IoError(std::string("ascii bit file: ") + e.what());
  }
}

void save_bits(const std::filesystem::path& path, const BitStream& bits, BitFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  if (format == BitFormat::Packed) {
    write_packed(out, bits);
  } else {
    write_ascii(out, bits);
  }
}

BitStream load_bits(const std::filesystem::path& path, BitFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  return format == BitFormat::Packed ? read_packed(in) : read_ascii(in);
}

BitFormat parse_bit_format(std::string_view name) {
  if (name == "packed") return BitFormat::Packed;
  if (name == "ascii") return BitFormat::Ascii;
  throw SpecError("unknown bit format '" + std::string(name) + "' (expected packed|ascii)");
}

}  // namespace lfsrng
