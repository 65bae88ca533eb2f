// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "sphtrop/expr.hpp"
#include "sphtrop/matrix.hpp"
#include "sphtrop/trop.hpp"

using namespace sphtrop;

namespace {

SeriesMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> exp(-5, 5), coef(1, 9);
  SeriesMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = PuiseuxSeries::from_terms({{Rational(exp(rng)), Rational(coef(rng))}, {Rational(exp(rng) + 6), Rational(-coef(rng))}},
                                          Rational(32));
  return m;
}

trop::VarietySpec pgl3_family() {
  std::vector<Expression> flat;
  for (auto& row : parse_matrix_literal("s1, 1, s3; 0, s2, 1; 1, s1*s2, 1 + s3"))
    for (auto& e : row) flat.push_back(e);
  return trop::VarietySpec::param(trop::GroupSpace(trop::SpaceKind::PGL, 3), flat);
}

void BM_MinorsSerial(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(compute_minors_serial(m, m.size()));
}

void BM_MinorsParallel(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(compute_minors_parallel(m, m.size(), static_cast<int>(state.range(1))));
}

void BM_SampleSerial(benchmark::State& state) {
  const auto spec = pgl3_family();
  trop::SampleOptions o;
  o.box.assign(3, {-static_cast<int>(state.range(0)), static_cast<int>(state.range(0))});
  for (auto _ : state) benchmark::DoNotOptimize(trop::sample_family_serial(spec, o));
}

void BM_SampleParallel(benchmark::State& state) {
  const auto spec = pgl3_family();
  trop::SampleOptions o;
  o.box.assign(3, {-static_cast<int>(state.range(0)), static_cast<int>(state.range(0))});
  o.threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(trop::sample_family_parallel(spec, o));
}

}  // namespace

BENCHMARK(BM_MinorsSerial)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinorsParallel)->Args({4, 4})->Args({5, 4})->Args({6, 4})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SampleSerial)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleParallel)->Args({1, 4})->Args({2, 4})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
