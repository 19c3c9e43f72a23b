#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lfsrng/bit_stream.hpp"

namespace lfsrng {

enum class Channel { Clock, Random };

std::string_view to_string(Channel channel);

struct TimeTag {
  Channel channel = Channel::Clock;
  std::int64_t timestamp_ps = 0;

  friend bool operator==(const TimeTag&, const TimeTag&) = default;
};

/// Clock/random pulse codec. Bit slot i starts at i * period.
///
/// jitter_sigma_ps is timebase jitter: one Gaussian offset per slot, applied
/// to the clock tag and to the random tag of that slot alike (both pulses
/// leave on the same clock edge). skew_sigma_ps adds an independent Gaussian
/// offset to each random tag only.
struct CodecParams {
  double clock_hz = 1e6;
  /// Coincidence half-width; 0 selects a quarter period.
  std::int64_t window_ps = 0;
  double jitter_sigma_ps = 0.0;
  double skew_sigma_ps = 0.0;

  std::int64_t period_ps() const;
  std::int64_t effective_window_ps() const;
  /// Requires clock_hz > 0, 0 < window < period / 2, non-negative sigmas.
  void validate() const;
};

/// Time-sorted tags (clock before random on equal timestamps); timestamps are
/// clamped at 0. noise_seed drives the jitter draws only.
std::vector<TimeTag> encode_bits_to_tags(const BitStream& bits, const CodecParams& params,
                                         std::uint64_t noise_seed = 0);

struct DecodeResult {
  BitStream bits;
  std::size_t clock_tags = 0;
  std::size_t random_tags = 0;
  std::size_t matched = 0;
  std::size_t orphans = 0;
};

/// One bit per clock tag, in time order: 1 iff some random tag has this clock
/// as its nearest clock (earlier clock wins a tie) within the window. Random
/// tags farther than the window from every clock are counted as orphans.
/// Throws SpecError when there is no clock tag.
DecodeResult decode_tags_to_bits(std::span<const TimeTag> tags, const CodecParams& params);

/// CSV with header `channel,timestamp_ps`, channel "clock" or "random".
void write_tags_csv(std::ostream& out, std::span<const TimeTag> tags);
/// Throws IoError on a malformed header or row.
std::vector<TimeTag> read_tags_csv(std::istream& in);

enum class ShuffleKind { Serial, Reverse, Random };

struct ShuffleMode {
  ShuffleKind kind = ShuffleKind::Serial;
  std::uint64_t perm_seed = 0;

  static ShuffleMode serial() { return {}; }
  static ShuffleMode reverse() { return {ShuffleKind::Reverse, 0}; }
  static ShuffleMode random(std::uint64_t seed) { return {ShuffleKind::Random, seed}; }

  /// "serial", "reverse" or "random:<seed>".
  static ShuffleMode parse(std::string_view text);
  std::string to_string() const;
};

/// Set order used by shuffle_concat. Random is a Fisher-Yates shuffle driven
/// by std::mt19937_64(perm_seed), with unbiased bounded draws by rejection.
std::vector<std::size_t> shuffle_order(std::size_t count, const ShuffleMode& mode);

/// Concatenates the sets in shuffle_order; bits inside a set are untouched.
/// Throws SpecError for an empty list.
BitStream shuffle_concat(std::span<const BitStream> sets, const ShuffleMode& mode);

enum class Polarization { H, V, D, A };

struct SelectLines {
  bool s1 = false;
  bool s0 = false;

  friend bool operator==(const SelectLines&, const SelectLines&) = default;
};

/// 00 -> H, 01 -> V, 10 -> D, 11 -> A, written (s1, s0).
Polarization polarization_for(SelectLines select);
SelectLines select_lines(Polarization symbol);
/// Laser channel enables for a symbol, indexed H, V, D, A.
std::array<bool, 4> active_channels(Polarization symbol);
char to_char(Polarization symbol);
Polarization parse_polarization(char c);

struct DemuxResult {
  std::vector<Polarization> symbols;
  bool dropped_trailing_bit = false;
  std::string note;
};

/// Bit 2i drives s1 and bit 2i+1 drives s0 of symbol i; an odd final bit is
/// dropped and noted.
DemuxResult demux_bits(const BitStream& bits);

/// One character per symbol followed by a newline.
void write_symbols_text(std::ostream& out, std::span<const Polarization> symbols);
std::vector<Polarization> read_symbols_text(std::istream& in);
/// Select-line bits (s1, s0 per symbol) in packed BitStream form.
BitStream symbols_to_bits(std::span<const Polarization> symbols);

}  // namespace lfsrng
