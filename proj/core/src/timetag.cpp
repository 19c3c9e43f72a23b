#include "lfsrng/timetag.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <random>

#include "lfsrng/error.hpp"

namespace lfsrng {
namespace {

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

bool tag_less(const TimeTag& a, const TimeTag& b) {
  if (a.timestamp_ps != b.timestamp_ps) return a.timestamp_ps < b.timestamp_ps;
  return a.channel == Channel::Clock && b.channel == Channel::Random;
}

}  // namespace

std::string_view to_string(Channel channel) {
  return channel == Channel::Clock ? "clock" : "random";
}

std::int64_t CodecParams::period_ps() const {
  return static_cast<std::int64_t>(std::llround(1e12 / clock_hz));
}

std::int64_t CodecParams::effective_window_ps() const {
  return window_ps == 0 ? period_ps() / 4 : window_ps;
}

void CodecParams::validate() const {
  if (!(clock_hz > 0.0) || !(1e12 / clock_hz >= 4.0)) {
    throw SpecError("clock frequency must be positive and at most 250 GHz");
  }
  const std::int64_t w = effective_window_ps();
  if (w <= 0 || 2 * w >= period_ps()) {
    throw SpecError("coincidence window must satisfy 0 < window < period/2 (window " +
                    std::to_string(w) + " ps, period " + std::to_string(period_ps()) + " ps)");
  }
  if (!(jitter_sigma_ps >= 0.0) || !(skew_sigma_ps >= 0.0)) {
    throw SpecError("jitter sigmas must be non-negative");
  }
}

std::vector<TimeTag> encode_bits_to_tags(const BitStream& bits, const CodecParams& params,
                                         std::uint64_t noise_seed) {
  params.validate();
  const std::int64_t period = params.period_ps();
  std::mt19937_64 rng(noise_seed);
  std::normal_distribution<double> jitter(0.0, params.jitter_sigma_ps > 0 ? params.jitter_sigma_ps : 1.0);
  std::normal_distribution<double> skew(0.0, params.skew_sigma_ps > 0 ? params.skew_sigma_ps : 1.0);
  auto clamp0 = [](double t) { return std::max<std::int64_t>(0, std::llround(t)); };

  std::vector<TimeTag> tags;
  tags.reserve(bits.size() + bits.count_ones());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    double t = static_cast<double>(static_cast<std::int64_t>(i) * period);
    if (params.jitter_sigma_ps > 0) t += jitter(rng);
    tags.push_back({Channel::Clock, clamp0(t)});
    if (bits[i]) {
      double r = t;
      if (params.skew_sigma_ps > 0) r += skew(rng);
      tags.push_back({Channel::Random, clamp0(r)});
    }
  }
  std::stable_sort(tags.begin(), tags.end(), tag_less);
  return tags;
}

DecodeResult decode_tags_to_bits(std::span<const TimeTag> tags, const CodecParams& params) {
  params.validate();
  std::vector<std::int64_t> clocks;
  std::vector<std::int64_t> randoms;
  for (const auto& tag : tags) {
    (tag.channel == Channel::Clock ? clocks : randoms).push_back(tag.timestamp_ps);
  }
  if (clocks.empty()) throw SpecError("decode needs at least one clock tag");
  std::sort(clocks.begin(), clocks.end());

  DecodeResult result;
  result.clock_tags = clocks.size();
  result.random_tags = randoms.size();
  result.bits = BitStream(clocks.size());
  const std::int64_t window = params.effective_window_ps();
  for (std::int64_t r : randoms) {
    const auto after = std::lower_bound(clocks.begin(), clocks.end(), r);
    std::size_t best = 0;
    std::int64_t distance = std::numeric_limits<std::int64_t>::max();
    if (after != clocks.begin()) {
      best = static_cast<std::size_t>(after - clocks.begin()) - 1;
      distance = r - clocks[best];
    }
    if (after != clocks.end() && *after - r < distance) {
      best = static_cast<std::size_t>(after - clocks.begin());
      distance = *after - r;
    }
    if (distance <= window) {
      result.bits.set(best, true);
      ++result.matched;
    } else {
      ++result.orphans;
    }
  }
  return result;
}

void write_tags_csv(std::ostream& out, std::span<const TimeTag> tags) {
  out << "channel,timestamp_ps\n";
  for (const auto& tag : tags) out << to_string(tag.channel) << ',' << tag.timestamp_ps << '\n';
  if (!out) throw IoError("failed writing time-tag CSV");
}

std::vector<TimeTag> read_tags_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("time-tag CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "channel,timestamp_ps") {
    throw IoError("time-tag CSV header must be 'channel,timestamp_ps', got '" + line + "'");
  }
  std::vector<TimeTag> tags;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    const auto bad = [&] {
      return IoError("time-tag CSV line " + std::to_string(line_no) + ": '" + line + "'");
    };
    if (comma == std::string::npos) throw bad();
    const std::string_view name(line.data(), comma);
    TimeTag tag;
    if (name == "clock") {
      tag.channel = Channel::Clock;
    } else if (name == "random") {
      tag.channel = Channel::Random;
    } else {
      throw bad();
    }
    const char* first = line.data() + comma + 1;
    const char* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, tag.timestamp_ps);
    if (ec != std::errc{} || ptr != last || tag.timestamp_ps < 0) throw bad();
    tags.push_back(tag);
  }
  return tags;
}

ShuffleMode ShuffleMode::parse(std::string_view text) {
  if (text == "serial") return serial();
  if (text == "reverse") return reverse();
  if (text.starts_with("random:")) {
    const std::string_view digits = text.substr(7);
    std::uint64_t seed = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && !digits.empty()) {
      return random(seed);
    }
  }
  throw SpecError("unknown shuffle mode '" + std::string(text) +
                  "' (serial|reverse|random:<seed>)");
}

std::string ShuffleMode::to_string() const {
  switch (kind) {
    case ShuffleKind::Serial:
      return "serial";
    case ShuffleKind::Reverse:
      return "reverse";
    case ShuffleKind::Random:
      return "random:" + std::to_string(perm_seed);
  }
  return {};
}

std::vector<std::size_t> shuffle_order(std::size_t count, const ShuffleMode& mode) {
  std::vector<std::size_t> order(count);
  for (std::size_t i = 0; i < count; ++i) order[i] = i;
  if (mode.kind == ShuffleKind::Reverse) {
    std::reverse(order.begin(), order.end());
  } else if (mode.kind == ShuffleKind::Random) {
    std::mt19937_64 rng(mode.perm_seed);
    for (std::size_t i = count; i > 1; --i) {
      const auto j = static_cast<std::size_t>(bounded(rng, i));
      std::swap(order[i - 1], order[j]);
    }
  }
  return order;
}

BitStream shuffle_concat(std::span<const BitStream> sets, const ShuffleMode& mode) {
  if (sets.empty()) throw SpecError("shuffle_concat needs at least one set");
  std::size_t total = 0;
  for (const auto& s : sets) total += s.size();
  BitStream out;
  out.reserve(total);
  for (std::size_t i : shuffle_order(sets.size(), mode)) out.append(sets[i]);
  return out;
}

Polarization polarization_for(SelectLines select) {
  return static_cast<Polarization>((select.s1 ? 2 : 0) | (select.s0 ? 1 : 0));
}

SelectLines select_lines(Polarization symbol) {
  const int v = static_cast<int>(symbol);
  return {(v & 2) != 0, (v & 1) != 0};
}

std::array<bool, 4> active_channels(Polarization symbol) {
  std::array<bool, 4> channels{};
  channels[static_cast<std::size_t>(symbol)] = true;
  return channels;
}

char to_char(Polarization symbol) { return "HVDA"[static_cast<int>(symbol)]; }

Polarization parse_polarization(char c) {
  switch (c) {
    case 'H':
      return Polarization::H;
    case 'V':
      return Polarization::V;
    case 'D':
      return Polarization::D;
    case 'A':
      return Polarization::A;
    default:
      throw SpecError(std::string("unknown polarization symbol '") + c + "'");
  }
}

DemuxResult demux_bits(const BitStream& bits) {
  DemuxResult result;
  const std::size_t pairs = bits.size() / 2;
  result.symbols.reserve(pairs);
  for (std::size_t i = 0; i < pairs; ++i) {
    result.symbols.push_back(polarization_for({bits[2 * i], bits[2 * i + 1]}));
  }
  if (bits.size() % 2 != 0) {
    result.dropped_trailing_bit = true;
    result.note = "odd input length: trailing bit dropped";
  }
  return result;
}

void write_symbols_text(std::ostream& out, std::span<const Polarization> symbols) {
  std::string text;
  text.reserve(symbols.size() + 1);
  for (auto s : symbols) text.push_back(to_char(s));
  text.push_back('\n');
  out << text;
  if (!out) throw IoError("failed writing symbol file");
}

std::vector<Polarization> read_symbols_text(std::istream& in) {
  std::vector<Polarization> symbols;
  char c = 0;
  while (in.get(c)) {
    if (c == '\n' || c == '\r') continue;
    try {
      symbols.push_back(parse_polarization(c));
    } catch (const SpecError& e) {
      throw IoError(e.what());
    }
  }
  return symbols;
}

BitStream symbols_to_bits(std::span<const Polarization> symbols) {
  BitStream bits;
  bits.reserve(2 * symbols.size());
  for (auto s : symbols) {
    const SelectLines sl = select_lines(s);
    bits.push_back(sl.s1);
    bits.push_back(sl.s0);
  }
  return bits;
}

}  // namespace lfsrng
