#include <benchmark/benchmark.h>

#include <dagger/localization.hpp>
#include <dagger/normed_core.hpp>
#include <dagger/series.hpp>
#include <dagger/spectrum.hpp>

using namespace dagger;

namespace {

TruncatedSeries dense(const BanachRingDesc& ring, std::size_t n, unsigned d) {
  TruncatedSeries f(ring, n, d);
  for (const auto& idx : monomials_up_to(n, d)) {
    long den = ring.is_lattice() ? 1 : 1 + idx[0] % 3;
    f.set(idx, Rational(static_cast<long>(total_degree(idx) % 7) - 3, den));
  }
  return f;
}

void BM_norm_S(benchmark::State& state) {
  const unsigned d = static_cast<unsigned>(state.range(0));
  TruncatedSeries f = dense(BanachRingDesc::padic(3), 2, d);
  PolyRadius rho({Rational(1, 2), Rational(2, 3)});
  for (auto _ : state) benchmark::DoNotOptimize(norm_S(f, rho));
}
BENCHMARK(BM_norm_S)->Arg(8)->Arg(16)->Arg(32);

void BM_multiply(benchmark::State& state) {
  const unsigned d = static_cast<unsigned>(state.range(0));
  TruncatedSeries f = dense(BanachRingDesc::rationals(), 2, d), g = dense(BanachRingDesc::rationals(), 2, d);
  for (auto _ : state) benchmark::DoNotOptimize(multiply(f, g, d));
}
BENCHMARK(BM_multiply)->Arg(4)->Arg(8)->Arg(12);

void BM_residue_norm(benchmark::State& state) {
  const BanachRingDesc z = BanachRingDesc::integers();
  WeightedFreeModule ambient(z, {1, 2, 3}, NormFlavor::Sum);
  Matrix rel(3, 3);
  const long entries[3][3] = {{7, -3, 10}, {2, 9, -4}, {-8, 5, 6}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) rel(i, j) = entries[i][j];
  PresentedModule m = cokernel(ModuleMap(WeightedFreeModule(z, {1, 1, 1}, NormFlavor::Sum), ambient, rel));
  Vector v{Rational(5), Rational(-6), Rational(4)};
  for (auto _ : state) benchmark::DoNotOptimize(residue_norm(m, v, 64));
}
BENCHMARK(BM_residue_norm);

void BM_koszul(benchmark::State& state) {
  const unsigned d = static_cast<unsigned>(state.range(0));
  const BanachRingDesc ring = BanachRingDesc::padic(3);
  DaggerPresentation a = DaggerPresentation::free_algebra(ring, PolyRadius::uniform(1, 1));
  LaurentSpec spec{{}, {}, {TruncatedSeries::variable(ring, 1, 0)}, {Rational(1)}};
  for (auto _ : state) benchmark::DoNotOptimize(koszul_h_check(a, spec, d));
}
BENCHMARK(BM_koszul)->Arg(6)->Arg(8)->Arg(10);

void BM_global_sup(benchmark::State& state) {
  TruncatedSeries f = dense(BanachRingDesc::integers(), 1, 6);
  PolyRadius rho({Rational(1)});
  for (auto _ : state) benchmark::DoNotOptimize(global_sup(f, rho, 50, 2, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_global_sup)->Arg(1)->Arg(4);

}  // namespace
BENCHMARK_MAIN();
