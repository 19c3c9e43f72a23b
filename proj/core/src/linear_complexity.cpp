#include <cmath>
#include <sstream>

#include "lfsrng/berlekamp_massey.hpp"
#include "lfsrng/error.hpp"
#include "lfsrng/linear_complexity_test.hpp"
#include "lfsrng/parallel.hpp"
#include "lfsrng/special_functions.hpp"

namespace lfsrng {

void LctParams::validate() const {
  if (block_length < kLctMinBlock || block_length > kLctMaxBlock) {
    throw SpecError("linear complexity block length " + std::to_string(block_length) +
                    " outside " + std::to_string(kLctMinBlock) + ".." +
                    std::to_string(kLctMaxBlock));
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw SpecError("alpha must lie in (0, 1)");
}

double lct_mean(std::size_t block_length) {
  const double m = static_cast<double>(block_length);
  const double sign = (block_length % 2 == 0) ? -1.0 : 1.0;  // (-1)^(M+1)
  return m / 2.0 + (9.0 + sign) / 36.0 - (m / 3.0 + 2.0 / 9.0) / std::pow(2.0, m);
}

std::size_t lct_category(std::size_t complexity, std::size_t block_length) {
  const double sign = (block_length % 2 == 0) ? 1.0 : -1.0;  // (-1)^M
  const double t =
      sign * (static_cast<double>(complexity) - lct_mean(block_length)) + 2.0 / 9.0;
  if (t <= -2.5) return 0;
  if (t <= -1.5) return 1;
  if (t <= -0.5) return 2;
  if (t <= 0.5) return 3;
  if (t <= 1.5) return 4;
  if (t <= 2.5) return 5;
  return 6;
}

std::vector<std::size_t> block_complexities(const BitStream& bits, std::size_t block_length,
                                            std::size_t max_blocks, unsigned threads) {
  if (block_length == 0) throw SpecError("block length must be positive");
  std::size_t blocks = bits.size() / block_length;
  if (max_blocks != 0) blocks = std::min(blocks, max_blocks);
  std::vector<std::size_t> out(blocks);
  parallel_for(blocks, threads, [&](std::size_t b) {
    std::vector<std::uint8_t> block(block_length);
    bits.unpack_into(block, b * block_length);
    out[b] = linear_complexity(block);
  });
  return out;
}

TestResult linear_complexity_test(const BitStream& bits, const LctParams& params) {
  params.validate();
  const std::size_t m = params.block_length;
  if (bits.size() < m) {
    throw LengthError("linear_complexity needs at least " + std::to_string(m) +
                          " bits (one block), got " + std::to_string(bits.size()),
                      m, bits.size());
  }
  const std::vector<std::size_t> complexities = block_complexities(bits, m, 0, params.threads);
  const std::size_t n_blocks = complexities.size();

  std::array<std::size_t, 7> nu{};
  for (std::size_t l : complexities) ++nu[lct_category(l, m)];

  double chi2 = 0.0;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    const double expected = static_cast<double>(n_blocks) * kLctCategoryProbabilities[i];
    const double diff = static_cast<double>(nu[i]) - expected;
    chi2 += diff * diff / expected;
  }

  TestResult r;
  r.id = TestId::LinearComplexity;
  r.parameters = {{"M", static_cast<double>(m)}, {"N", static_cast<double>(n_blocks)}};
  r.statistics = {{"chi2", chi2}};
  for (std::size_t i = 0; i < nu.size(); ++i) {
    r.statistics.emplace_back("nu" + std::to_string(i), static_cast<double>(nu[i]));
  }
  r.p_values = {igamc(3.0, chi2 / 2.0)};
  r.discarded_bits = bits.size() - n_blocks * m;
  r.decide(params.alpha);
  return r;
}

}  // namespace lfsrng
