#include "lfsrng/stat_tests.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

#include "lfsrng/error.hpp"
#include "lfsrng/linear_complexity_test.hpp"
#include "lfsrng/special_functions.hpp"

namespace lfsrng {
namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

void require_length(TestId id, std::size_t n, std::size_t required) {
  if (n < required) {
    throw LengthError(std::string(to_string(id)) + " needs at least " + std::to_string(required) +
                          " bits, got " + std::to_string(n),
                      required, n);
  }
}

TestResult make_result(TestId id, double alpha, std::vector<double> p_values) {
  TestResult r;
  r.id = id;
  r.p_values = std::move(p_values);
  r.decide(alpha);
  return r;
}

unsigned floor_log2(std::size_t n) {
  return n == 0 ? 0 : static_cast<unsigned>(std::bit_width(n) - 1);
}

// Overlapping m-bit pattern counts with the sequence wrapped around.
std::vector<std::uint32_t> pattern_counts(std::span<const std::uint8_t> bits, unsigned m) {
  std::vector<std::uint32_t> counts(std::size_t{1} << m, 0);
  const std::size_t n = bits.size();
  const std::uint32_t mask = static_cast<std::uint32_t>((std::uint64_t{1} << m) - 1);
  std::uint32_t code = 0;
  for (unsigned j = 0; j + 1 < m; ++j) code = (code << 1) | bits[j % n];
  for (std::size_t i = 0; i < n; ++i) {
    code = ((code << 1) | bits[(i + m - 1) % n]) & mask;
    ++counts[code];
  }
  return counts;
}

// Counts of (m-1)-bit prefixes from m-bit counts.
std::vector<std::uint32_t> marginalize(const std::vector<std::uint32_t>& counts) {
  std::vector<std::uint32_t> out(counts.size() / 2);
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = counts[2 * c] + counts[2 * c + 1];
  return out;
}

double psi_squared(const std::vector<std::uint32_t>& counts, std::size_t n) {
  if (counts.size() <= 1) return 0.0;  // m == 0
  double sum = 0.0;
  for (std::uint32_t c : counts) sum += static_cast<double>(c) * static_cast<double>(c);
  return static_cast<double>(counts.size()) / static_cast<double>(n) * sum -
         static_cast<double>(n);
}

double phi(const std::vector<std::uint32_t>& counts, std::size_t n) {
  if (counts.size() <= 1) return 0.0;
  double sum = 0.0;
  for (std::uint32_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(n);
    sum += p * std::log(p);
  }
  return sum;
}

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

unsigned gf2_rank32(std::array<std::uint32_t, 32> rows) {
  unsigned rank = 0;
  for (int bit = 31; bit >= 0 && rank < 32; --bit) {
    const std::uint32_t mask = std::uint32_t{1} << bit;
    unsigned pivot = rank;
    while (pivot < 32 && (rows[pivot] & mask) == 0) ++pivot;
    if (pivot == 32) continue;
    std::swap(rows[rank], rows[pivot]);
    for (unsigned i = 0; i < 32; ++i) {
      if (i != rank && (rows[i] & mask) != 0) rows[i] ^= rows[rank];
    }
    ++rank;
  }
  return rank;
}

double cusum_p_value(std::int64_t n, std::int64_t z) {
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double zd = static_cast<double>(z);
  // Summation limits use truncating integer division, as in the reference code.
  double sum1 = 0.0;
  for (std::int64_t k = (-n / z + 1) / 4; k <= (n / z - 1) / 4; ++k) {
    sum1 += normal_cdf((4.0 * k + 1.0) * zd / sqrt_n);
    sum1 -= normal_cdf((4.0 * k - 1.0) * zd / sqrt_n);
  }
  double sum2 = 0.0;
  for (std::int64_t k = (-n / z - 3) / 4; k <= (n / z - 1) / 4; ++k) {
    sum2 += normal_cdf((4.0 * k + 3.0) * zd / sqrt_n);
    sum2 -= normal_cdf((4.0 * k + 1.0) * zd / sqrt_n);
  }
  return 1.0 - sum1 + sum2;
}

}  // namespace

TestParams TestParams::capped_for(std::size_t n) const {
  TestParams p = *this;
  const int log2n = static_cast<int>(floor_log2(n));
  p.serial_block = static_cast<unsigned>(
      std::clamp(log2n - 3, 2, static_cast<int>(serial_block)));
  p.approximate_entropy_block = static_cast<unsigned>(
      std::clamp(log2n - 6, 1, static_cast<int>(approximate_entropy_block)));
  return p;
}

std::size_t min_length(TestId id, const TestParams& params) {
  switch (id) {
    case TestId::Frequency:
      return 1;
    case TestId::BlockFrequency:
      return std::max<std::size_t>(1, params.block_frequency_block);
    case TestId::Runs:
      return 2;
    case TestId::LongestRun:
      return 128;
    case TestId::Rank:
      return 38 * 1024;
    case TestId::Dft:
      return 8;
    case TestId::Serial:
      return std::size_t{1} << params.serial_block;
    case TestId::ApproximateEntropy:
      return std::size_t{1} << params.approximate_entropy_block;
    case TestId::CumulativeSums:
      return 1;
    case TestId::LinearComplexity:
      return params.linear_complexity_block;
  }
  return 0;
}

TestResult frequency_test(std::span<const std::uint8_t> bits, double alpha) {
  const std::size_t n = bits.size();
  require_length(TestId::Frequency, n, 1);
  std::int64_t sum = 0;
  for (std::uint8_t b : bits) sum += b ? 1 : -1;
  const double s_obs = std::fabs(static_cast<double>(sum)) / std::sqrt(static_cast<double>(n));
  TestResult r = make_result(TestId::Frequency, alpha, {std::erfc(s_obs / kSqrt2)});
  r.parameters = {{"n", static_cast<double>(n)}};
  r.statistics = {{"S", static_cast<double>(sum)}, {"s_obs", s_obs}};
  return r;
}

TestResult block_frequency_test(std::span<const std::uint8_t> bits, std::size_t block,
                                double alpha) {
  if (block == 0) throw SpecError("block_frequency block length must be positive");
  const std::size_t n = bits.size();
  require_length(TestId::BlockFrequency, n, block);
  const std::size_t n_blocks = n / block;
  double sum = 0.0;
  for (std::size_t i = 0; i < n_blocks; ++i) {
    std::size_t ones = 0;
    for (std::size_t j = 0; j < block; ++j) ones += bits[i * block + j];
    const double pi = static_cast<double>(ones) / static_cast<double>(block) - 0.5;
    sum += pi * pi;
  }
  const double chi2 = 4.0 * static_cast<double>(block) * sum;
  TestResult r = make_result(TestId::BlockFrequency, alpha,
                             {igamc(static_cast<double>(n_blocks) / 2.0, chi2 / 2.0)});
  r.parameters = {{"M", static_cast<double>(block)}, {"N", static_cast<double>(n_blocks)}};
  r.statistics = {{"chi2", chi2}};
  r.discarded_bits = n - n_blocks * block;
  return r;
}

TestResult runs_test(std::span<const std::uint8_t> bits, double alpha) {
  const std::size_t n = bits.size();
  require_length(TestId::Runs, n, 2);
  const double nd = static_cast<double>(n);
  std::size_t ones = 0;
  for (std::uint8_t b : bits) ones += b;
  const double pi = static_cast<double>(ones) / nd;
  const double tau = 2.0 / std::sqrt(nd);

  TestResult r;
  r.id = TestId::Runs;
  r.parameters = {{"n", nd}};
  if (std::fabs(pi - 0.5) >= tau) {
    r.statistics = {{"pi", pi}};
    r.p_values = {0.0};
    r.note = "frequency prerequisite failed";
    r.decide(alpha);
    return r;
  }
  std::size_t v = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) v += bits[k] != bits[k + 1];
  const double vd = static_cast<double>(v);
  const double p = std::erfc(std::fabs(vd - 2.0 * nd * pi * (1.0 - pi)) /
                             (2.0 * std::sqrt(2.0 * nd) * pi * (1.0 - pi)));
  r.statistics = {{"pi", pi}, {"V", vd}};
  r.p_values = {p};
  r.decide(alpha);
  return r;
}

TestResult longest_run_test(std::span<const std::uint8_t> bits, double alpha) {
  const std::size_t n = bits.size();
  require_length(TestId::LongestRun, n, 128);

  std::size_t block = 0;
  std::size_t lowest = 0;
  std::vector<double> pi;
  if (n < 6272) {
    block = 8;
    lowest = 1;
    pi = {0.2148, 0.3672, 0.2305, 0.1875};
  } else if (n < 750000) {
    block = 128;
    lowest = 4;
    pi = {0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124};
  } else {
    block = 10000;
    lowest = 10;
    pi = {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727};
  }
  const std::size_t k = pi.size() - 1;
  const std::size_t n_blocks = n / block;
  std::vector<std::size_t> nu(pi.size(), 0);
  for (std::size_t i = 0; i < n_blocks; ++i) {
    std::size_t longest = 0;
    std::size_t run = 0;
    for (std::size_t j = 0; j < block; ++j) {
      run = bits[i * block + j] ? run + 1 : 0;
      longest = std::max(longest, run);
    }
    ++nu[std::clamp(longest, lowest, lowest + k) - lowest];
  }
  double chi2 = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    const double expected = static_cast<double>(n_blocks) * pi[i];
    const double diff = static_cast<double>(nu[i]) - expected;
    chi2 += diff * diff / expected;
  }
  TestResult r = make_result(TestId::LongestRun, alpha,
                             {igamc(static_cast<double>(k) / 2.0, chi2 / 2.0)});
  r.parameters = {{"M", static_cast<double>(block)}, {"N", static_cast<double>(n_blocks)}};
  r.statistics = {{"chi2", chi2}};
  r.discarded_bits = n - n_blocks * block;
  return r;
}

double rank_probability(unsigned r, unsigned rows, unsigned cols) {
  double product = 1.0;
  for (unsigned i = 0; i < r; ++i) {
    const double di = static_cast<double>(i);
    product *= (1.0 - std::pow(2.0, di - cols)) * (1.0 - std::pow(2.0, di - rows)) /
               (1.0 - std::pow(2.0, di - r));
  }
  const double exponent = static_cast<double>(r) * (static_cast<double>(rows) + cols - r) -
                          static_cast<double>(rows) * cols;
  return std::pow(2.0, exponent) * product;
}

TestResult rank_test(std::span<const std::uint8_t> bits, double alpha) {
  const std::size_t n = bits.size();
  require_length(TestId::Rank, n, 38 * 1024);
  const std::size_t n_matrices = n / 1024;
  std::array<std::size_t, 3> counts{};  // full, full-1, lower
  for (std::size_t k = 0; k < n_matrices; ++k) {
    std::array<std::uint32_t, 32> rows{};
    for (unsigned row = 0; row < 32; ++row) {
      std::uint32_t word = 0;
      const std::uint8_t* p = bits.data() + k * 1024 + row * 32;
      for (unsigned col = 0; col < 32; ++col) word = (word << 1) | p[col];
      rows[row] = word;
    }
    const unsigned rank = gf2_rank32(rows);
    ++counts[rank == 32 ? 0 : rank == 31 ? 1 : 2];
  }
  const double p32 = rank_probability(32);
  const double p31 = rank_probability(31);
  const std::array<double, 3> probs = {p32, p31, 1.0 - p32 - p31};
  double chi2 = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double expected = static_cast<double>(n_matrices) * probs[i];
    const double diff = static_cast<double>(counts[i]) - expected;
    chi2 += diff * diff / expected;
  }
  TestResult r = make_result(TestId::Rank, alpha, {std::exp(-chi2 / 2.0)});
  r.parameters = {{"N", static_cast<double>(n_matrices)}};
  r.statistics = {{"chi2", chi2},
                  {"F32", static_cast<double>(counts[0])},
                  {"F31", static_cast<double>(counts[1])}};
  r.discarded_bits = n - n_matrices * 1024;
  return r;
}

TestResult dft_test(std::span<const std::uint8_t> bits, double alpha) {
  const std::size_t n = bits.size();
  require_length(TestId::Dft, n, 8);
  const int size = static_cast<int>(n);

  std::unique_ptr<double, FftwFree> in(fftw_alloc_real(n));
  std::unique_ptr<fftw_complex, FftwFree> out(fftw_alloc_complex(n / 2 + 1));
  if (!in || !out) throw Error("dft: FFT buffer allocation failed");
  for (std::size_t i = 0; i < n; ++i) in.get()[i] = bits[i] ? 1.0 : -1.0;

  fftw_plan plan = nullptr;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_r2c_1d(size, in.get(), out.get(), FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw Error("dft: FFT planning failed");
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }

  const double nd = static_cast<double>(n);
  const double threshold = std::sqrt(2.995732274 * nd);
  const std::size_t half = n / 2;
  std::size_t below = 0;
  for (std::size_t j = 0; j < half; ++j) {
    const double re = out.get()[j][0];
    const double im = out.get()[j][1];
    if (std::sqrt(re * re + im * im) < threshold) ++below;
  }
  const double n0 = 0.95 * nd / 2.0;
  const double d = (static_cast<double>(below) - n0) / std::sqrt(nd * 0.95 * 0.05 / 4.0);
  TestResult r = make_result(TestId::Dft, alpha, {std::erfc(std::fabs(d) / kSqrt2)});
  r.parameters = {{"n", nd}};
  r.statistics = {{"N0", n0}, {"N1", static_cast<double>(below)}, {"d", d}};
  return r;
}

TestResult serial_test(std::span<const std::uint8_t> bits, unsigned m, double alpha) {
  if (m < 2 || m > 24) throw SpecError("serial block length must lie in 2..24");
  const std::size_t n = bits.size();
  require_length(TestId::Serial, n, std::size_t{1} << m);
  const auto counts_m = pattern_counts(bits, m);
  const auto counts_m1 = marginalize(counts_m);
  const auto counts_m2 = marginalize(counts_m1);
  const double psi_m = psi_squared(counts_m, n);
  const double psi_m1 = psi_squared(counts_m1, n);
  const double psi_m2 = psi_squared(counts_m2, n);
  const double del1 = psi_m - psi_m1;
  const double del2 = psi_m - 2.0 * psi_m1 + psi_m2;
  TestResult r = make_result(TestId::Serial, alpha,
                             {igamc(std::ldexp(1.0, static_cast<int>(m) - 2), del1 / 2.0),
                              igamc(std::ldexp(1.0, static_cast<int>(m) - 3), del2 / 2.0)});
  r.parameters = {{"m", static_cast<double>(m)}};
  r.statistics = {{"psi2_m", psi_m}, {"del1", del1}, {"del2", del2}};
  return r;
}

TestResult approximate_entropy_test(std::span<const std::uint8_t> bits, unsigned m,
                                    double alpha) {
  if (m < 1 || m > 23) throw SpecError("approximate_entropy block length must lie in 1..23");
  const std::size_t n = bits.size();
  require_length(TestId::ApproximateEntropy, n, std::size_t{1} << m);
  const auto counts_m1 = pattern_counts(bits, m + 1);
  const auto counts_m = marginalize(counts_m1);
  const double apen = phi(counts_m, n) - phi(counts_m1, n);
  const double chi2 = 2.0 * static_cast<double>(n) * (std::numbers::ln2 - apen);
  TestResult r = make_result(TestId::ApproximateEntropy, alpha,
                             {igamc(std::ldexp(1.0, static_cast<int>(m) - 1), chi2 / 2.0)});
  r.parameters = {{"m", static_cast<double>(m)}};
  r.statistics = {{"ApEn", apen}, {"chi2", chi2}};
  return r;
}

TestResult cumulative_sums_test(std::span<const std::uint8_t> bits, double alpha) {
  const std::size_t n = bits.size();
  require_length(TestId::CumulativeSums, n, 1);
  std::int64_t sum = 0;
  std::int64_t z_forward = 0;
  for (std::uint8_t b : bits) {
    sum += b ? 1 : -1;
    z_forward = std::max(z_forward, sum < 0 ? -sum : sum);
  }
  sum = 0;
  std::int64_t z_backward = 0;
  for (std::size_t i = n; i-- > 0;) {
    sum += bits[i] ? 1 : -1;
    z_backward = std::max(z_backward, sum < 0 ? -sum : sum);
  }
  const auto ni = static_cast<std::int64_t>(n);
  TestResult r = make_result(TestId::CumulativeSums, alpha,
                             {cusum_p_value(ni, z_forward), cusum_p_value(ni, z_backward)});
  r.parameters = {{"n", static_cast<double>(n)}};
  r.statistics = {{"z_forward", static_cast<double>(z_forward)},
                  {"z_backward", static_cast<double>(z_backward)}};
  return r;
}

TestResult run_single_test(TestId id, std::span<const std::uint8_t> bits,
                           const TestParams& params) {
  require_length(id, bits.size(), min_length(id, params));
  const double alpha = params.alpha;
  switch (id) {
    case TestId::Frequency:
      return frequency_test(bits, alpha);
    case TestId::BlockFrequency:
      return block_frequency_test(bits, params.block_frequency_block, alpha);
    case TestId::Runs:
      return runs_test(bits, alpha);
    case TestId::LongestRun:
      return longest_run_test(bits, alpha);
    case TestId::Rank:
      return rank_test(bits, alpha);
    case TestId::Dft:
      return dft_test(bits, alpha);
    case TestId::Serial:
      return serial_test(bits, params.serial_block, alpha);
    case TestId::ApproximateEntropy:
      return approximate_entropy_test(bits, params.approximate_entropy_block, alpha);
    case TestId::CumulativeSums:
      return cumulative_sums_test(bits, alpha);
    case TestId::LinearComplexity:
      return linear_complexity_test(BitStream::from_bits(bits),
                                    LctParams{params.linear_complexity_block, alpha,
                                              params.threads});
  }
  throw SpecError("unknown test id");
}

TestResult run_single_test(TestId id, const BitStream& bits, const TestParams& params) {
  if (id == TestId::LinearComplexity) {
    require_length(id, bits.size(), min_length(id, params));
    return linear_complexity_test(
        bits, LctParams{params.linear_complexity_block, params.alpha, params.threads});
  }
  const std::vector<std::uint8_t> unpacked = bits.unpack();
  return run_single_test(id, std::span<const std::uint8_t>(unpacked), params);
}

}  // namespace lfsrng
