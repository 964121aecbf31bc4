#include <benchmark/benchmark.h>

#include "dgda/factorization.hpp"
#include "dgda/koszul_tate.hpp"

using namespace dgda;

namespace {

Truncation window(int n, int d, int r, int l = 2) {
  Truncation t;
  t.N = n;
  t.poly_degree = d;
  t.order = r;
  t.word_length = l;
  return t;
}

void BM_WeylMul(benchmark::State& state) {
  int k = static_cast<int>(state.range(0));
  WeylOp a = WeylOp::identity(1), b = WeylOp::identity(1);
  for (int i = 0; i < k; ++i) {
    a = weyl_mul(a, WeylOp::x(1, 0) + WeylOp::identity(1));
    b = weyl_mul(b, WeylOp::partial(1, 0));
  }
  for (auto _ : state) benchmark::DoNotOptimize(weyl_mul(b, a));
}
BENCHMARK(BM_WeylMul)->DenseRange(2, 8, 2);

void BM_KoszulHomology(benchmark::State& state) {
  DgaPtr o = base_algebra(3);
  DgaPtr k = koszul_resolution(o, {AlgElem::from_poly(Poly::variable(3, 0)), AlgElem::from_poly(Poly::variable(3, 1))});
  Truncation t = window(2, static_cast<int>(state.range(0)), 0);
  for (auto _ : state) benchmark::DoNotOptimize(homology(k, t));
}
BENCHMARK(BM_KoszulHomology)->DenseRange(1, 5, 2)->Unit(benchmark::kMillisecond);

void BM_KoszulTateVerify(benchmark::State& state) {
  int r = static_cast<int>(state.range(0));
  DgaPtr jets = jet_algebra({1, {"phi"}, r});
  KTComplex kt = koszul_tate(jets, {jets->gen(jets->generators()[0], {2})});
  for (auto _ : state) benchmark::DoNotOptimize(kt_verify(kt, window(1, 1, r, 2)));
}
BENCHMARK(BM_KoszulTateVerify)->DenseRange(3, 5, 1)->Unit(benchmark::kMillisecond);

void BM_CofTrivFibPoint(benchmark::State& state) {
  DgaPtr o = base_algebra(0);
  DgaPtr b = free_algebra(sphere(0, 2, "w"));
  DgaMorphism phi = unit_morphism(b);
  Truncation t = window(3, 0, 0);
  auto budget = default_budget(b, t, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cof_trivfib(phi, budget));
}
BENCHMARK(BM_CofTrivFibPoint)->DenseRange(1, 3, 1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
