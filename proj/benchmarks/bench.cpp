#include <benchmark/benchmark.h>

#include <random>

#include "depdetect/abelian.hpp"
#include "depdetect/detector.hpp"
#include "depdetect/height.hpp"
#include "depdetect/multiplicative.hpp"
#include "depdetect/reduction.hpp"

using namespace depdetect;

namespace {

const CurveQ& curve11() {
  static CurveQ E(1, 1);
  return E;
}

PointQ gen11() { return PointQ::affine(Rat(0), Rat(1)); }

void bm_count_points(benchmark::State& state) {
  CurveFp Ep = reduce_curve(curve11(), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_points(Ep));
}

void bm_group_structure(benchmark::State& state) {
  CurveFp Ep = reduce_curve(curve11(), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(group_structure(Ep));
}

void bm_decompose(benchmark::State& state) {
  CurveFp Ep = reduce_curve(curve11(), 9973);
  GroupStructureFp S = group_structure(Ep);
  PointFp Q = Ep.mul(1234, S.G2);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(Ep, S, Q));
}

void bm_snf(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-50, 50);
  long n = state.range(0);
  IntMatrix M(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) M.at(i, j) = d(rng);
  for (auto _ : state) benchmark::DoNotOptimize(snf(M));
}

void bm_local_check(benchmark::State& state) {
  CurveQ E = curve11();
  PointQ P = gen11();
  Instance inst{E, {P}, E.mul(5, P)};
  StructureCache cache;
  local_check(inst, state.range(0), &cache);  // warm the structure
  for (auto _ : state)
    benchmark::DoNotOptimize(local_check(inst, state.range(0), &cache));
}

void bm_scan(benchmark::State& state) {
  CurveQ E = curve11();
  PointQ P = gen11();
  Instance inst{E, {P}, E.mul(5, P)};
  StructureCache cache;
  ScanConfig cfg;
  cfg.cache = &cache;
  for (auto _ : state)
    benchmark::DoNotOptimize(scan(inst, state.range(0), cfg));
}

void bm_height(benchmark::State& state) {
  CurveQ E = curve11();
  PointQ P = gen11();
  for (auto _ : state)
    benchmark::DoNotOptimize(canonical_height(E, P, 1e-8));
}

void bm_recover(benchmark::State& state) {
  CurveQ E(-7, 10);
  std::vector<PointQ> basis{PointQ::affine(Rat(1), Rat(2)),
                            PointQ::affine(Rat(3), Rat(4))};
  Instance inst{E, basis, linear_combination(E, basis, {Int(2), Int(-1)})};
  for (auto _ : state)
    benchmark::DoNotOptimize(recover_coefficients(inst, 1e-8, 12));
}

void bm_local_check_gm(benchmark::State& state) {
  MultInstance inst;
  inst.gammas = {Rat(2), Rat(3), Rat(5)};
  inst.beta = 720;
  for (auto _ : state)
    benchmark::DoNotOptimize(local_check_gm(inst, state.range(0)));
}

void bm_factor_rational(benchmark::State& state) {
  Rat x(Int("999983") * Int("1000003"));
  for (auto _ : state) benchmark::DoNotOptimize(factor_rational(x));
}

}  // namespace

BENCHMARK(bm_count_points)->Arg(1009)->Arg(9973)->Arg(99991);
BENCHMARK(bm_group_structure)->Arg(9973)->Arg(99991);
BENCHMARK(bm_decompose);
BENCHMARK(bm_snf)->Arg(4)->Arg(8);
BENCHMARK(bm_local_check)->Arg(1009)->Arg(9973);
BENCHMARK(bm_scan)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_height);
BENCHMARK(bm_recover);
BENCHMARK(bm_local_check_gm)->Arg(10007);
BENCHMARK(bm_factor_rational);

BENCHMARK_MAIN();
