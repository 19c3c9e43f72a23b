#include <benchmark/benchmark.h>

#include <random>

#include "lfsrng/battery.hpp"
#include "lfsrng/berlekamp_massey.hpp"
#include "lfsrng/combine.hpp"
#include "lfsrng/lfsr.hpp"
#include "lfsrng/linear_complexity_test.hpp"
#include "lfsrng/stat_tests.hpp"

using namespace lfsrng;

static void BM_Generate(benchmark::State& state) {
  const auto width = static_cast<unsigned>(state.range(0));
  const auto structure = state.range(1) == 0 ? Structure::Fibonacci : Structure::Galois;
  Lfsr lfsr(make_config(width, structure), 1);
  BitStream out;
  for (auto _ : state) {
    out = lfsr.generate(1 << 20);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * (1 << 20));
}
BENCHMARK(BM_Generate)->ArgsProduct({{16, 64, 128, 786}, {0, 1}});

static void BM_XorTwoWidths(benchmark::State& state) {
  const auto v = GeneratorVariant::xor_two_widths(128, SeedSpec::short_seed(1), 129,
                                                  SeedSpec::short_seed(2));
  for (auto _ : state) benchmark::DoNotOptimize(variant_stream(v, 1 << 20));
  state.SetItemsProcessed(state.iterations() * (1 << 20));
}
BENCHMARK(BM_XorTwoWidths);

static void BM_BerlekampMassey(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(state.range(0)));
  for (auto& b : bits) b = rng() & 1;
  for (auto _ : state) benchmark::DoNotOptimize(linear_complexity(bits));
}
BENCHMARK(BM_BerlekampMassey)->Arg(500)->Arg(3200);

static void BM_LinearComplexityTest(benchmark::State& state) {
  const BitStream bits = variant_stream(
      GeneratorVariant::xor_two_widths(128, SeedSpec::short_seed(1), 129, SeedSpec::short_seed(2)),
      1'000'000);
  for (auto _ : state) benchmark::DoNotOptimize(linear_complexity_test(bits));
}
BENCHMARK(BM_LinearComplexityTest)->Unit(benchmark::kMillisecond);

static void BM_Battery100k(benchmark::State& state) {
  const BitStream bits = variant_stream(
      GeneratorVariant::xor_two_widths(127, SeedSpec::short_seed(1), 131, SeedSpec::short_seed(2)),
      100'000);
  BatteryConfig config;
  config.sequence_length = 100'000;
  for (auto _ : state) benchmark::DoNotOptimize(run_battery(bits, config));
}
BENCHMARK(BM_Battery100k)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
