#include <benchmark/benchmark.h>

#include <random>

#include "nilcap/collector.hpp"
#include "nilcap/engine.hpp"
#include "nilcap/polycyclic.hpp"

using namespace nilcap;

namespace {

std::vector<NormalForm> random_elements(const Collector& c, std::size_t n) {
  std::mt19937_64 rng(1);
  std::vector<NormalForm> out;
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<std::int64_t> v(c.size());
    for (int i = 0; i < c.size(); ++i) v[i] = static_cast<std::int64_t>(rng() % c.basis().modulus(i));
    out.push_back(c.element(v));
  }
  return out;
}

void CollectorMultiply(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const Collector c(std::make_shared<const HallBasis>(HallBasis::make(5, k, {2, 2, 2})));
  const auto xs = random_elements(c, 256);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(c.mul(xs[i % 256], xs[(i * 7 + 3) % 256]));
    ++i;
  }
}
BENCHMARK(CollectorMultiply)->Arg(2)->Arg(3)->Arg(4);

void CollectorPower(benchmark::State& state) {
  const Collector c(std::make_shared<const HallBasis>(HallBasis::make(5, 3, {2, 2, 2})));
  const auto xs = random_elements(c, 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(c.inv_pow(xs[i++ % 64], 24));
}
BENCHMARK(CollectorPower);

void CenterByEnumeration(benchmark::State& state) {
  const auto g = NilpotentProduct::make(3, 3, {1, 2});
  for (auto _ : state) benchmark::DoNotOptimize(center(*g).order());
}
BENCHMARK(CenterByEnumeration)->Unit(benchmark::kMillisecond);

void CenterBySeries(benchmark::State& state) {
  GroupSpec s;
  s.prime = 5;
  s.nilpotency_class = 3;
  s.orders = {2, 2, 2};
  const auto pc = build_pc_group(s);
  for (auto _ : state) benchmark::DoNotOptimize(pc.center_preimage().rank());
}
BENCHMARK(CenterBySeries)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
