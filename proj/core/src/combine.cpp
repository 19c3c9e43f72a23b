#include "lfsrng/combine.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "lfsrng/error.hpp"

namespace lfsrng {

SeedSpec SeedSpec::short_seed(std::uint64_t value) {
  SeedSpec s;
  s.value_ = value;
  return s;
}

SeedSpec SeedSpec::register_hex(std::string hex) {
  SeedSpec s;
  s.value_ = 0;
  s.register_hex_ = std::move(hex);
  return s;
}

Register SeedSpec::resolve(const LfsrConfig& config) const {
  if (!register_hex_) return expand_seed(config, value_);
  Register reg = Register::from_hex(config.width, *register_hex_);
  if (is_fixed_point(config, reg)) {
    throw SpecError("register seed " + *register_hex_ + " is the fixed point of " +
                    std::string(lfsrng::to_string(config.gate)) + " feedback");
  }
  return reg;
}

std::string SeedSpec::to_string() const {
  return register_hex_ ? "reg:" + *register_hex_ : std::to_string(value_);
}

SeedSpec SeedSpec::parse(std::string_view text) {
  if (text.starts_with("reg:")) return register_hex(std::string(text.substr(4)));
  int base = 10;
  if (text.starts_with("0x") || text.starts_with("0X")) {
    text.remove_prefix(2);
    base = 16;
  }
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, base);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw SpecError("invalid seed '" + std::string(text) + "'");
  }
  return short_seed(value);
}

std::string_view to_string(VariantKind kind) {
  switch (kind) {
    case VariantKind::Single:
      return "single";
    case VariantKind::XorSameWidth:
      return "xor-same";
    case VariantKind::XorTwoWidths:
      return "xor2";
    case VariantKind::XorOfFour:
      return "xor4";
  }
  return "?";
}

VariantKind parse_variant_kind(std::string_view name) {
  if (name == "single") return VariantKind::Single;
  if (name == "xor-same") return VariantKind::XorSameWidth;
  if (name == "xor2") return VariantKind::XorTwoWidths;
  if (name == "xor4") return VariantKind::XorOfFour;
  throw SpecError("unknown variant kind '" + std::string(name) +
                  "' (expected single|xor-same|xor2|xor4)");
}

GeneratorVariant GeneratorVariant::single(unsigned d, SeedSpec s) {
  return {VariantKind::Single, {{d, std::move(s)}}};
}

GeneratorVariant GeneratorVariant::xor_same_width(unsigned d, SeedSpec s1, SeedSpec s2) {
  return {VariantKind::XorSameWidth, {{d, std::move(s1)}, {d, std::move(s2)}}};
}

GeneratorVariant GeneratorVariant::xor_two_widths(unsigned d1, SeedSpec s1, unsigned d2,
                                                  SeedSpec s2) {
  return {VariantKind::XorTwoWidths, {{d1, std::move(s1)}, {d2, std::move(s2)}}};
}

GeneratorVariant GeneratorVariant::xor_of_four(const std::vector<Leg>& legs) {
  return {VariantKind::XorOfFour, legs};
}

LfsrConfig GeneratorVariant::leg_config(std::size_t i) const {
  return make_config(legs.at(i).width, structure, gate);
}

void GeneratorVariant::validate() const {
  const std::size_t expected = kind == VariantKind::Single       ? 1
                               : kind == VariantKind::XorOfFour ? 4
                                                                : 2;
  if (legs.size() != expected) {
    throw SpecError(std::string(to_string(kind)) + " variant needs " + std::to_string(expected) +
                    " legs, got " + std::to_string(legs.size()));
  }
  std::vector<Register> seeds;
  for (std::size_t i = 0; i < legs.size(); ++i) seeds.push_back(legs[i].seed.resolve(leg_config(i)));

  switch (kind) {
    case VariantKind::Single:
      break;
    case VariantKind::XorSameWidth:
      if (legs[0].width != legs[1].width) {
        throw SpecError("xor-same variant needs equal widths");
      }
      if (seeds[0] == seeds[1]) {
        throw SpecError("xor-same variant needs distinct seeds (s1 == s2 cancels to zero)");
      }
      break;
    case VariantKind::XorTwoWidths:
    case VariantKind::XorOfFour: {
      std::set<unsigned> widths;
      for (const Leg& leg : legs) widths.insert(leg.width);
      if (widths.size() != legs.size()) {
        throw SpecError(std::string(to_string(kind)) + " variant needs distinct widths");
      }
      break;
    }
  }
}

std::string GeneratorVariant::label() const {
  auto leg_label = [](const Leg& leg) {
    return "L(" + std::to_string(leg.width) + "," + leg.seed.to_string() + ")";
  };
  if (kind == VariantKind::Single) return leg_label(legs.at(0));
  if (kind == VariantKind::XorOfFour) {
    return "XOR(XOR(" + leg_label(legs.at(0)) + ", " + leg_label(legs.at(1)) + "), XOR(" +
           leg_label(legs.at(2)) + ", " + leg_label(legs.at(3)) + "))";
  }
  return "XOR(" + leg_label(legs.at(0)) + ", " + leg_label(legs.at(1)) + ")";
}

VariantGenerator::VariantGenerator(const GeneratorVariant& variant) {
  variant.validate();
  legs_.reserve(variant.legs.size());
  for (std::size_t i = 0; i < variant.legs.size(); ++i) {
    const LfsrConfig config = variant.leg_config(i);
    legs_.emplace_back(config, variant.legs[i].seed.resolve(config));
  }
}

std::uint64_t VariantGenerator::next_word(unsigned count) {
  std::uint64_t word = 0;
  for (Lfsr& leg : legs_) word ^= leg.next_word(count);
  return word;
}

void VariantGenerator::generate_into(BitStream& out, std::size_t n) {
  out.reserve(out.size() + n);
  while (n > 0) {
    const unsigned take = static_cast<unsigned>(std::min<std::size_t>(n, 64));
    out.append_word(next_word(take), take);
    n -= take;
  }
}

BitStream VariantGenerator::generate(std::size_t n) {
  BitStream out;
  generate_into(out, n);
  return out;
}

BitStream xor_streams(const BitStream& a, const BitStream& b) {
  if (a.size() != b.size()) {
    throw SpecError("xor_streams: length mismatch (" + std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()) + ")");
  }
  BitStream out;
  out.reserve(a.size());
  const auto wa = a.words();
  const auto wb = b.words();
  for (std::size_t w = 0; w < wa.size(); ++w) {
    const unsigned count =
        static_cast<unsigned>(std::min<std::size_t>(64, a.size() - 64 * w));
    out.append_word(wa[w] ^ wb[w], count);
  }
  return out;
}

BitStream variant_stream(const GeneratorVariant& variant, std::size_t n) {
  if (n == 0) throw SpecError("variant_stream needs n >= 1");
  return VariantGenerator(variant).generate(n);
}

}  // namespace lfsrng
