#include <benchmark/benchmark.h>

#include "rrm/overlap.hpp"
#include "rrm/shadows.hpp"
#include "rrm/zoo.hpp"

namespace {

void BM_DrawSnapshot(benchmark::State& state) {
  const rrm::DensityMatrix rho = rrm::named_state({"noisy_ghz", {{"n", 5}, {"p", 0.5}}});
  const auto e = static_cast<rrm::Ensemble>(state.range(0));
  const rrm::CVector psi = rrm::ghz_vector(5, 1);
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(rrm::draw_snapshot(rho, e, {11, i++}).fidelity(psi));
  state.SetLabel(rrm::to_string(e));
}
BENCHMARK(BM_DrawSnapshot)
    ->Arg(static_cast<int>(rrm::Ensemble::global_orthogonal))
    ->Arg(static_cast<int>(rrm::Ensemble::local_orthogonal))
    ->Arg(static_cast<int>(rrm::Ensemble::global_unitary))
    ->Arg(static_cast<int>(rrm::Ensemble::local_unitary));

void BM_EstimateOverlap(benchmark::State& state) {
  const rrm::DensityMatrix a = rrm::named_state({"overlap_family", {{"p", 0.1}}});
  const rrm::DensityMatrix b = rrm::named_state({"overlap_family", {{"p", 0.9}}});
  const auto params = rrm::default_overlap_params(5, rrm::OverlapVariant::local_combo);
  const long n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(rrm::estimate_overlap(a, b, params, n, 0, 3, 1).value);
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_EstimateOverlap)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
