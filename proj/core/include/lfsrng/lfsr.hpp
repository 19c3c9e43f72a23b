#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lfsrng/bit_stream.hpp"

namespace lfsrng {

enum class Structure { Fibonacci, Galois };
enum class Gate { Xor, Xnor };

std::string_view to_string(Structure s);
std::string_view to_string(Gate g);
Structure parse_structure(std::string_view name);
Gate parse_gate(std::string_view name);

inline constexpr unsigned kMinWidth = 2;
inline constexpr unsigned kMaxWidth = 1024;

/// Register width, tap set and feedback flavour of one shift register.
///
/// Taps are the nonzero exponents of the connection polynomial
/// C(x) = 1 + sum x^t, i.e. stage numbers 1..width whose contents feed back.
/// The output sequence obeys a[n] = XOR over t of a[n - t].
struct LfsrConfig {
  unsigned width = 0;
  std::vector<unsigned> taps;
  Structure structure = Structure::Fibonacci;
  Gate gate = Gate::Xor;

  /// Throws SpecError unless taps are nonempty, unique, inside 1..width and
  /// include width itself.
  void validate() const;

  friend bool operator==(const LfsrConfig&, const LfsrConfig&) = default;
};

/// Config built from the shipped primitive tap table.
LfsrConfig make_config(unsigned width, Structure structure = Structure::Fibonacci,
                       Gate gate = Gate::Xor);

/// `width`-bit register value. Bit i holds stage i + 1.
class Register {
 public:
  Register() = default;
  explicit Register(unsigned width);

  static Register from_uint(unsigned width, std::uint64_t value);
  /// Accepts an optional 0x prefix; value must fit in `width` bits.
  static Register from_hex(unsigned width, std::string_view hex);

  unsigned width() const noexcept { return width_; }
  bool bit(unsigned i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set_bit(unsigned i, bool value) noexcept;

  bool is_zero() const noexcept;
  bool is_all_ones() const noexcept;
  Register operator~() const;
  std::string to_hex() const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

  friend bool operator==(const Register&, const Register&) = default;

 private:
  unsigned width_ = 0;
  std::vector<std::uint64_t> words_;
};

/// The state that freezes the register for this gate (all-zero for XOR,
/// all-ones for XNOR).
bool is_fixed_point(const LfsrConfig& config, const Register& reg);

/// Expands a short integer seed into a full register with a SplitMix64
/// stream, redrawing while the result is the gate's fixed point.
Register expand_seed(const LfsrConfig& config, std::uint64_t seed);

/// Bit-exact LFSR state machine.
///
/// Fibonacci: emits stage `width` (the bit leaving the register), shifts
/// towards higher stages and feeds the tap parity into stage 1.
/// Galois: emits stage 1 before shifting towards lower stages; when the
/// emitted bit is 1 every tapped stage is toggled (stage `width` receives
/// the emitted bit itself).
/// XNOR complements the feedback, so complementing the seed complements
/// every output bit.
class Lfsr {
 public:
  Lfsr(LfsrConfig config, Register seed);
  Lfsr(LfsrConfig config, std::uint64_t short_seed)
      : Lfsr(config, expand_seed(config, short_seed)) {}

  const LfsrConfig& config() const noexcept { return config_; }
  std::uint64_t steps_taken() const noexcept { return steps_; }
  Register state() const;
  std::span<const std::uint64_t> state_words() const noexcept { return reg_; }

  int step() noexcept;
  /// Next `count` (<= 64) output bits, first bit in the least significant position.
  std::uint64_t next_word(unsigned count = 64) noexcept;

  BitStream generate(std::size_t n);
  void generate_into(BitStream& out, std::size_t n);

 private:
  struct TapRef {
    unsigned word;
    unsigned shift;
  };

  int step_fibonacci() noexcept;
  int step_galois() noexcept;

  LfsrConfig config_;
  std::vector<std::uint64_t> reg_;
  std::vector<std::uint64_t> galois_mask_;
  std::vector<std::uint64_t> xnor_mask_;
  std::vector<TapRef> tap_refs_;
  std::uint64_t top_mask_ = 0;
  unsigned out_shift_ = 0;
  std::uint64_t steps_ = 0;
};

inline constexpr unsigned kPeriodOracleMaxWidth = 24;

/// Smallest t > 0 returning the register to `seed`, by brute force.
/// Throws SpecError for widths above kPeriodOracleMaxWidth.
std::uint64_t period(const LfsrConfig& config, const Register& seed);

struct TapEntry {
  unsigned width;
  std::vector<unsigned> taps;
  /// False when only irreducibility has been established (order of x unproven).
  bool primitive_verified;
};

/// Every shipped entry, sorted by width.
std::span<const TapEntry> tap_table();

/// Tap set for `width`; throws SpecError("no tap entry for width N") otherwise.
std::vector<unsigned> primitive_taps(unsigned width);

}  // namespace lfsrng
