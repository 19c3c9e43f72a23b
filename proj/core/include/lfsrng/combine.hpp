#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lfsrng/bit_stream.hpp"
#include "lfsrng/lfsr.hpp"

namespace lfsrng {

/// Either a short integer seed (expanded with expand_seed) or an explicit
/// register value in hex.
class SeedSpec {
 public:
  SeedSpec() = default;
  static SeedSpec short_seed(std::uint64_t value);
  static SeedSpec register_hex(std::string hex);

  Register resolve(const LfsrConfig& config) const;
  /// "42" for short seeds, "reg:0x..." for explicit registers.
  std::string to_string() const;
  static SeedSpec parse(std::string_view text);

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;

 private:
  std::uint64_t value_ = 1;
  std::optional<std::string> register_hex_;
};

enum class VariantKind { Single, XorSameWidth, XorTwoWidths, XorOfFour };

std::string_view to_string(VariantKind kind);
VariantKind parse_variant_kind(std::string_view name);

struct Leg {
  unsigned width = 0;
  SeedSpec seed;

  friend bool operator==(const Leg&, const Leg&) = default;
};

/// One of the generator families: a single register, or the XOR of two
/// (same or different widths) or four registers. Every leg takes its taps
/// from the primitive tap table.
struct GeneratorVariant {
  VariantKind kind = VariantKind::Single;
  std::vector<Leg> legs;
  Structure structure = Structure::Fibonacci;
  Gate gate = Gate::Xor;

  static GeneratorVariant single(unsigned d, SeedSpec s);
  static GeneratorVariant xor_same_width(unsigned d, SeedSpec s1, SeedSpec s2);
  static GeneratorVariant xor_two_widths(unsigned d1, SeedSpec s1, unsigned d2, SeedSpec s2);
  static GeneratorVariant xor_of_four(const std::vector<Leg>& legs);

  LfsrConfig leg_config(std::size_t i) const;
  /// Checks leg count, tap availability and the kind's invariants
  /// (distinct seeds for same-width, distinct widths otherwise).
  void validate() const;
  /// Compact human label, e.g. "XOR(L(128,1), L(129,2))".
  std::string label() const;

  friend bool operator==(const GeneratorVariant&, const GeneratorVariant&) = default;
};

/// Lockstep generator over all legs of a variant; never materializes a leg.
class VariantGenerator {
 public:
  explicit VariantGenerator(const GeneratorVariant& variant);

  std::uint64_t next_word(unsigned count = 64);
  void generate_into(BitStream& out, std::size_t n);
  BitStream generate(std::size_t n);

 private:
  std::vector<Lfsr> legs_;
};

/// Elementwise XOR; throws SpecError on length mismatch.
BitStream xor_streams(const BitStream& a, const BitStream& b);

/// First `n` bits of the variant; throws SpecError when n == 0 or the
/// variant is invalid.
BitStream variant_stream(const GeneratorVariant& variant, std::size_t n);

}  // namespace lfsrng
