#include <benchmark/benchmark.h>

#include "paramod/harness.hpp"
#include "paramod/hyper.hpp"

using namespace paramod;

namespace {

const std::string kData = PARAMOD_BENCH_DATA_DIR;

const FieldOracle& oracle() {
  static const FieldOracle o = FieldOracle::load(kData + "/oracle.tsv");
  return o;
}

void BM_OracleLoad(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(FieldOracle::load(kData + "/oracle.tsv").size());
}
BENCHMARK(BM_OracleLoad)->Unit(benchmark::kMillisecond);

void BM_Evaluate(benchmark::State& st) {
  const FieldOracle& o = oracle();
  for (auto _ : st) benchmark::DoNotOptimize(evaluate(st.range(0), o).structures.size());
}
BENCHMARK(BM_Evaluate)->Arg(415)->Arg(777)->Arg(963)->Unit(benchmark::kMicrosecond);

void BM_Sweep(benchmark::State& st) {
  const FieldOracle& o = oracle();
  for (auto _ : st) benchmark::DoNotOptimize(sweep(33, 999, o, static_cast<unsigned>(st.range(0))).size());
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& st) {
  IntPoly f = IntPoly::parse("x^6 + 2x^5 + 3x^4 + 4x^3 - x^2 - 2x + 1");
  for (auto _ : st) benchmark::DoNotOptimize(classify_two_torsion(f, st.range(0)).code.tag);
}
BENCHMARK(BM_Classify)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_EulerFactor(benchmark::State& st) {
  CurveModel c = CurveModel::from_hyperelliptic(IntPoly::parse("x^6 + 2x^5 + 3x^4 + 4x^3 - x^2 - 2x + 1"));
  for (auto _ : st) benchmark::DoNotOptimize(euler_factor(c, st.range(0)).e1);
}
BENCHMARK(BM_EulerFactor)->Arg(101)->Arg(997)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
