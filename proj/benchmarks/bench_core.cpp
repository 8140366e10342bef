#include <benchmark/benchmark.h>

#include "itercert/certify.hpp"
#include "itercert/tower.hpp"

using namespace itercert;

namespace {

IlrsSpec fibonacci() {
  return IlrsSpec::validate(2, {1, 1}, 0, {1, 1}, "fibonacci");
}

void BM_find_period(benchmark::State& state) {
  auto fib = fibonacci();
  Int q = state.range(0);
  for (auto _ : state) {
    auto info = find_period(fib, q);
    benchmark::DoNotOptimize(info.L);
  }
}
BENCHMARK(BM_find_period)->Arg(10)->Arg(997)->Arg(10007);

void BM_eval_mod_large_index(benchmark::State& state) {
  auto fib = fibonacci();
  auto info = find_period(fib, 9973);
  Int n = Int(1) << state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(eval_mod(fib, n, 9973, &info));
}
BENCHMARK(BM_eval_mod_large_index)->Arg(32)->Arg(128)->Arg(512);

void BM_chain_period(benchmark::State& state) {
  auto fib = fibonacci();
  auto ff = CompositionChain::create({fib, fib});
  Int q = state.range(0);
  for (auto _ : state) {
    auto t = chain_period(ff, q);
    benchmark::DoNotOptimize(t.L_total);
  }
}
BENCHMARK(BM_chain_period)->Arg(7)->Arg(97)->Arg(499);

void BM_eval_chain_mod(benchmark::State& state) {
  auto fib = fibonacci();
  auto ff = CompositionChain::create({fib, fib});
  auto tower = chain_period(ff, 97);
  Int n = (Int(1) << state.range(0)) + 5;
  for (auto _ : state)
    benchmark::DoNotOptimize(eval_chain_mod(ff, n, 97, &tower));
}
BENCHMARK(BM_eval_chain_mod)->Arg(32)->Arg(256);

void BM_certify_interval(benchmark::State& state) {
  auto fib = fibonacci();
  auto ff = CompositionChain::create({fib, fib});
  for (auto _ : state) {
    PeriodCache cache;
    auto cert = certify_prime_free_interval(ff, 5, &cache);
    benchmark::DoNotOptimize(cert.L);
  }
}
BENCHMARK(BM_certify_interval);

void BM_theta(benchmark::State& state) {
  double X = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(theta(X));
}
BENCHMARK(BM_theta)->Arg(1000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
