#include <benchmark/benchmark.h>

#include "gu22/finitegeom.hpp"
#include "gu22/invariants.hpp"
#include "gu22/localmodel.hpp"
#include "gu22/stratcount.hpp"

using namespace gu22;

static void BM_SymElemMul(benchmark::State& state) {
  const Tower& t = Tower::get(5);
  SymElem a(&t, 3, 1, Rat(2, 5), 7), b(&t, -1, 4, 1, Rat(1, 3));
  for (auto _ : state) {
    a = a * b;
    a = a / b;
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_SymElemMul);

static void BM_Kottwitz(benchmark::State& state) {
  const Tower& t = Tower::get(state.range(0));
  const SMat H = antidiagonal_hermitian(4);
  auto b1 = make_group_element(b1_matrix(t), H);
  for (auto _ : state) benchmark::DoNotOptimize(kottwitz(b1));
}
BENCHMARK(BM_Kottwitz)->Arg(3)->Arg(7);

static void BM_IsotropicSplit6(benchmark::State& state) {
  auto V = FiniteQuadSpace::standard(3, 6, QuadKind::SplitEven);
  const FField& F = FField::get(3, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_isotropic(V, F, 3).size());
}
BENCHMARK(BM_IsotropicSplit6)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_StrataSplit6(benchmark::State& state) {
  auto V = FiniteQuadSpace::standard(3, 6, QuadKind::SplitEven);
  auto lags = rational_lagrangians(V, 2);
  for (auto _ : state) benchmark::DoNotOptimize(count_strata(V, 2, lags).total);
}
BENCHMARK(BM_StrataSplit6)->Unit(benchmark::kMillisecond);

static void BM_NaivePoints(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_naive_points(3).counts);
}
BENCHMARK(BM_NaivePoints)->Unit(benchmark::kMillisecond);

static void BM_TangentDimension(benchmark::State& state) {
  auto F = standard_point(5, 0);
  for (auto _ : state) benchmark::DoNotOptimize(tangent_dimension(5, F));
}
BENCHMARK(BM_TangentDimension);

static void BM_LinkCountsType5(benchmark::State& state) {
  const Tower& t = Tower::get(3);
  auto Q = quadratic_ambient(t);
  auto L5 = *quadratic_type5(Q);
  for (auto _ : state) benchmark::DoNotOptimize(link_counts(Q, L5).sub.size());
}
BENCHMARK(BM_LinkCountsType5)->Unit(benchmark::kMillisecond);

static void BM_NonNeutralIncidence(benchmark::State& state) {
  const Tower& t = Tower::get(state.range(0));
  auto H = hermitian_ambient(1, t);
  auto T = hermitian_self_dual(H);
  for (auto _ : state) benchmark::DoNotOptimize(incidence(H, T, 2).neighbours);
}
BENCHMARK(BM_NonNeutralIncidence)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
