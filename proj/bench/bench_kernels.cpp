// Parallel kernels against their serial references.

#include "ncwres/fourier.hpp"
#include "ncwres/sampling.hpp"
#include "ncwres/wres.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

using namespace ncwres;

namespace {

struct ProductInputs {
  Symbol p{4};
  Symbol q{4};
};

const ProductInputs& product_inputs() {
  static const ProductInputs in = [] {
    ProductInputs r;
    RandomSymbolOptions o;
    o.top_degree = 2;
    o.depth = 3;
    o.terms_per_degree = 3;
    r.p = random_symbol(4, 1, o);
    o.top_degree = -2;
    r.q = random_symbol(4, 2, o);
    return r;
  }();
  return in;
}

FourierElement dense_element(std::uint64_t seed, int radius) {
  std::vector<double> upper;
  for (int i = 0; i < 6; ++i) upper.push_back(std::fmod(std::sqrt(2.0) * (i + 1), 1.0));
  const auto theta = ThetaMatrix::from_upper(4, upper);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1, 1);
  FourierElement x(theta);
  FourierIndex i{};
  for (i[0] = -radius; i[0] <= radius; ++i[0])
    for (i[1] = -radius; i[1] <= radius; ++i[1])
      for (i[2] = -radius; i[2] <= radius; ++i[2])
        for (i[3] = -radius; i[3] <= radius; ++i[3]) x.add(i, Complex(unit(rng), unit(rng)));
  return x;
}

void BM_SymbolProduct(benchmark::State& state) {
  const auto& in = product_inputs();
  for (auto _ : state) benchmark::DoNotOptimize(symbol_product(in.p, in.q, -6));
}

void BM_SymbolProductSerial(benchmark::State& state) {
  const auto& in = product_inputs();
  for (auto _ : state) benchmark::DoNotOptimize(symbol_product_serial(in.p, in.q, -6));
}

void BM_NcMultiply(benchmark::State& state) {
  const auto x = dense_element(1, static_cast<int>(state.range(0)));
  const auto y = dense_element(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nc_multiply(x, y));
}

void BM_NcMultiplySerial(benchmark::State& state) {
  const auto x = dense_element(1, static_cast<int>(state.range(0)));
  const auto y = dense_element(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nc_multiply_serial(x, y));
}

MultiIndex quartic() {
  MultiIndex a{};
  a[0] = 2;
  a[1] = 2;
  return a;
}

void BM_SphereMonteCarlo(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(sphere_moment_monte_carlo(quartic(), 4, static_cast<std::uint64_t>(state.range(0)), 7));
  }
}

void BM_SphereMonteCarloSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sphere_moment_monte_carlo_serial(quartic(), 4, static_cast<std::uint64_t>(state.range(0)), 7));
  }
}

}  // namespace

BENCHMARK(BM_SymbolProduct)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SymbolProductSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_NcMultiply)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_NcMultiplySerial)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SphereMonteCarlo)->Arg(1 << 20)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SphereMonteCarloSerial)->Arg(1 << 20)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
