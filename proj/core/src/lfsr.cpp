#include "lfsrng/lfsr.hpp"

#include <algorithm>
#include <bit>

#include "lfsrng/error.hpp"

namespace lfsrng {
namespace {

std::size_t word_count(unsigned width) { return (width + 63) / 64; }

std::uint64_t top_word_mask(unsigned width) {
  const unsigned rest = width & 63;
  return rest == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << rest) - 1;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::string_view to_string(Structure s) {
  return s == Structure::Fibonacci ? "fibonacci" : "galois";
}

std::string_view to_string(Gate g) { return g == Gate::Xor ? "xor" : "xnor"; }

Structure parse_structure(std::string_view name) {
  if (name == "fibonacci") return Structure::Fibonacci;
  if (name == "galois") return Structure::Galois;
  throw SpecError("unknown structure '" + std::string(name) + "' (expected fibonacci|galois)");
}

Gate parse_gate(std::string_view name) {
  if (name == "xor") return Gate::Xor;
  if (name == "xnor") return Gate::Xnor;
  throw SpecError("unknown gate '" + std::string(name) + "' (expected xor|xnor)");
}

void LfsrConfig::validate() const {
  if (width < kMinWidth || width > kMaxWidth) {
    throw SpecError("register width " + std::to_string(width) + " outside " +
                    std::to_string(kMinWidth) + ".." + std::to_string(kMaxWidth));
  }
  if (taps.empty()) throw SpecError("tap set is empty");
  std::vector<unsigned> sorted = taps;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw SpecError("duplicate tap position");
  }
  if (sorted.front() < 1 || sorted.back() > width) {
    throw SpecError("tap position outside 1.." + std::to_string(width));
  }
  if (sorted.back() != width) {
    throw SpecError("tap set must contain the register width " + std::to_string(width));
  }
}

LfsrConfig make_config(unsigned width, Structure structure, Gate gate) {
  return LfsrConfig{width, primitive_taps(width), structure, gate};
}

Register::Register(unsigned width) : width_(width), words_(word_count(width), 0) {}

Register Register::from_uint(unsigned width, std::uint64_t value) {
  Register r(width);
  if (width < 64 && (value >> width) != 0) {
    throw SpecError("seed value does not fit in " + std::to_string(width) + " bits");
  }
  r.words_[0] = value;
  return r;
}

Register Register::from_hex(unsigned width, std::string_view hex) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  if (hex.empty()) throw SpecError("empty hex register value");
  Register r(width);
  unsigned bit = 0;
  for (auto it = hex.rbegin(); it != hex.rend(); ++it) {
    const char c = *it;
    unsigned nibble = 0;
    if (c >= '0' && c <= '9') {
      nibble = static_cast<unsigned>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      nibble = static_cast<unsigned>(c - 'a' + 10);
    } else if (c >= 'A' && c <= 'F') {
      nibble = static_cast<unsigned>(c - 'A' + 10);
    } else {
      throw SpecError("invalid hex digit '" + std::string(1, c) + "' in register value");
    }
    for (unsigned k = 0; k < 4; ++k, ++bit) {
      if (((nibble >> k) & 1u) == 0) continue;
      if (bit >= width) {
        throw SpecError("register value 0x" + std::string(hex) + " does not fit in " +
                        std::to_string(width) + " bits");
      }
      r.set_bit(bit, true);
    }
  }
  return r;
}

void Register::set_bit(unsigned i, bool value) noexcept {
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= mask;
  } else {
    words_[i >> 6] &= ~mask;
  }
}

bool Register::is_zero() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool Register::is_all_ones() const noexcept {
  if (words_.empty()) return false;
  for (std::size_t w = 0; w + 1 < words_.size(); ++w) {
    if (words_[w] != ~std::uint64_t{0}) return false;
  }
  return words_.back() == top_word_mask(width_);
}

Register Register::operator~() const {
  Register r = *this;
  for (auto& w : r.words_) w = ~w;
  if (!r.words_.empty()) r.words_.back() &= top_word_mask(width_);
  return r;
}

std::string Register::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  const unsigned nibbles = (width_ + 3) / 4;
  out.reserve(nibbles + 2);
  for (unsigned n = nibbles; n-- > 0;) {
    unsigned v = 0;
    for (unsigned k = 0; k < 4; ++k) {
      const unsigned bit_index = 4 * n + k;
      if (bit_index < width_ && bit(bit_index)) v |= 1u << k;
    }
    out.push_back(kDigits[v]);
  }
  return "0x" + out;
}

bool is_fixed_point(const LfsrConfig& config, const Register& reg) {
  return config.gate == Gate::Xor ? reg.is_zero() : reg.is_all_ones();
}

Register expand_seed(const LfsrConfig& config, std::uint64_t seed) {
  config.validate();
  std::uint64_t state = seed;
  Register reg(config.width);
  do {
    for (auto& w : reg.words()) w = splitmix64(state);
    reg.words().back() &= top_word_mask(config.width);
  } while (is_fixed_point(config, reg));
  return reg;
}

Lfsr::Lfsr(LfsrConfig config, Register seed) : config_(std::move(config)) {
  config_.validate();
  if (seed.width() != config_.width) {
    throw SpecError("seed register width " + std::to_string(seed.width()) +
                    " does not match LFSR width " + std::to_string(config_.width));
  }
  if (is_fixed_point(config_, seed)) {
    throw SpecError(config_.gate == Gate::Xor
                        ? "all-zero seed is a fixed point of XOR feedback"
                        : "all-ones seed is a fixed point of XNOR feedback");
  }
  reg_.assign(seed.words().begin(), seed.words().end());
  top_mask_ = top_word_mask(config_.width);
  out_shift_ = (config_.width - 1) & 63;

  galois_mask_.assign(reg_.size(), 0);
  for (unsigned t : config_.taps) {
    tap_refs_.push_back({(t - 1) >> 6, (t - 1) & 63});
    galois_mask_[(t - 1) >> 6] |= std::uint64_t{1} << ((t - 1) & 63);
  }
  xnor_mask_ = galois_mask_;
  xnor_mask_[(config_.width - 1) >> 6] &= ~(std::uint64_t{1} << out_shift_);
}

Register Lfsr::state() const {
  Register r(config_.width);
  std::copy(reg_.begin(), reg_.end(), r.words().begin());
  return r;
}

int Lfsr::step_fibonacci() noexcept {
  const std::size_t n = reg_.size();
  const int out = static_cast<int>((reg_[n - 1] >> out_shift_) & 1u);
  std::uint64_t fb = 0;
  for (const TapRef& t : tap_refs_) fb ^= reg_[t.word] >> t.shift;
  fb &= 1u;
  if (config_.gate == Gate::Xnor) fb ^= 1u;
  for (std::size_t w = n - 1; w > 0; --w) reg_[w] = (reg_[w] << 1) | (reg_[w - 1] >> 63);
  reg_[0] = (reg_[0] << 1) | fb;
  reg_[n - 1] &= top_mask_;
  return out;
}

int Lfsr::step_galois() noexcept {
  const std::size_t n = reg_.size();
  const std::uint64_t out = reg_[0] & 1u;
  for (std::size_t w = 0; w + 1 < n; ++w) reg_[w] = (reg_[w] >> 1) | (reg_[w + 1] << 63);
  reg_[n - 1] >>= 1;
  const std::uint64_t select = std::uint64_t{0} - out;
  for (std::size_t w = 0; w < n; ++w) reg_[w] ^= galois_mask_[w] & select;
  if (config_.gate == Gate::Xnor) {
    for (std::size_t w = 0; w < n; ++w) reg_[w] ^= xnor_mask_[w];
  }
  return static_cast<int>(out);
}

int Lfsr::step() noexcept {
  ++steps_;
  return config_.structure == Structure::Fibonacci ? step_fibonacci() : step_galois();
}

std::uint64_t Lfsr::next_word(unsigned count) noexcept {
  std::uint64_t word = 0;
  if (reg_.size() == 1 && config_.structure == Structure::Fibonacci) {
    // Single-word fast path.
    std::uint64_t r = reg_[0];
    const std::uint64_t xnor = config_.gate == Gate::Xnor ? 1u : 0u;
    for (unsigned i = 0; i < count; ++i) {
      word |= ((r >> out_shift_) & 1u) << i;
      std::uint64_t fb = xnor;
      for (const TapRef& t : tap_refs_) fb ^= r >> t.shift;
      r = ((r << 1) | (fb & 1u)) & top_mask_;
    }
    reg_[0] = r;
    steps_ += count;
    return word;
  }
  for (unsigned i = 0; i < count; ++i) word |= static_cast<std::uint64_t>(step()) << i;
  return word;
}

void Lfsr::generate_into(BitStream& out, std::size_t n) {
  out.reserve(out.size() + n);
  while (n > 0) {
    const unsigned take = static_cast<unsigned>(std::min<std::size_t>(n, 64));
    out.append_word(next_word(take), take);
    n -= take;
  }
}

BitStream Lfsr::generate(std::size_t n) {
  BitStream out;
  generate_into(out, n);
  return out;
}

std::uint64_t period(const LfsrConfig& config, const Register& seed) {
  config.validate();
  if (config.width > kPeriodOracleMaxWidth) {
    throw SpecError("oracle bound exceeded: period oracle supports width <= " +
                    std::to_string(kPeriodOracleMaxWidth) + ", got " +
                    std::to_string(config.width));
  }
  Lfsr lfsr(config, seed);
  const std::uint64_t limit = std::uint64_t{1} << config.width;
  const std::uint64_t start = seed.words()[0];
  for (std::uint64_t t = 1; t <= limit; ++t) {
    lfsr.step();
    if (lfsr.state_words()[0] == start) return t;
  }
  throw Error("register did not return to its seed within 2^width steps");
}

}  // namespace lfsrng
