#include <benchmark/benchmark.h>

#include "qcorr/ensembles.hpp"
#include "qcorr/localize.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/monogamy.hpp"

namespace {

void BM_Ggm(benchmark::State& st) {
  const auto s = qcorr::sample_haar(static_cast<int>(st.range(0)), {1, 0});
  for (auto _ : st) benchmark::DoNotOptimize(qcorr::ggm(s));
}
BENCHMARK(BM_Ggm)->DenseRange(3, 8);

void BM_Discord(benchmark::State& st) {
  const auto rho = qcorr::reduced_density(qcorr::sample_haar(3, {2, 0}), {0, 1});
  for (auto _ : st) benchmark::DoNotOptimize(qcorr::discord(rho, 0));
}
BENCHMARK(BM_Discord);

void BM_MonogamyTerms(benchmark::State& st) {
  const auto s = qcorr::sample_haar(static_cast<int>(st.range(0)), {3, 0});
  const auto m = static_cast<qcorr::QcMeasure>(st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(qcorr::monogamy_terms(s, m).score(1.0));
}
BENCHMARK(BM_MonogamyTerms)->ArgsProduct({{3, 5}, {0, 1, 2}});

void BM_Localize(benchmark::State& st) {
  const auto s = qcorr::sample_haar(static_cast<int>(st.range(0)), {4, 0});
  for (auto _ : st) {
    benchmark::DoNotOptimize(qcorr::localize(s, {0, 1}, qcorr::QcMeasure::Concurrence, 1.0).value);
  }
}
BENCHMARK(BM_Localize)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_LocalizePauli(benchmark::State& st) {
  const auto s = qcorr::sample_haar(static_cast<int>(st.range(0)), {5, 0});
  for (auto _ : st) benchmark::DoNotOptimize(qcorr::localize_pauli(s, {0, 1}, qcorr::QcMeasure::Concurrence));
}
BENCHMARK(BM_LocalizePauli)->DenseRange(3, 6);

}  // namespace

BENCHMARK_MAIN();
