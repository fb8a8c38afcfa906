#include <benchmark/benchmark.h>

#include "rrm/correlation.hpp"
#include "rrm/entanglement.hpp"
#include "rrm/moments.hpp"
#include "rrm/zoo.hpp"

namespace {

void BM_CorrelationTensor(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const rrm::DensityMatrix rho = rrm::named_state({"isotropic", {{"d", d}, {"p", 0.8}}});
  const rrm::GGMBasis basis = rrm::ggm_basis(d);
  for (auto _ : state) benchmark::DoNotOptimize(rrm::correlation_tensor(rho, basis));
}
BENCHMARK(BM_CorrelationTensor)->Arg(3)->Arg(4)->Arg(5);

void BM_ExactFourthMoment(benchmark::State& state) {
  const rrm::CorrelationTensor t = rrm::correlation_tensor(rrm::named_state({"upb_tiles", {}}));
  for (auto _ : state) benchmark::DoNotOptimize(rrm::exact_fourth_moment(t));
}
BENCHMARK(BM_ExactFourthMoment);

void BM_FMin(benchmark::State& state) {
  double y = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rrm::f_min(1, y, 3));
    y = y > 0.15 ? 0.0 : y + 1e-3;
  }
}
BENCHMARK(BM_FMin);

void BM_FMinOracle(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(rrm::f_min_oracle(2, 0.1, 3));
}
BENCHMARK(BM_FMinOracle)->Unit(benchmark::kMillisecond);

void BM_MomentMC(benchmark::State& state) {
  const rrm::DensityMatrix rho = rrm::named_state({"chessboard", {}});
  const auto kind = static_cast<rrm::Protocol>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rrm::estimate_moment_mc(rho, kind, 4, 1000, 0, 5, 1).value);
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_MomentMC)
    ->Arg(static_cast<int>(rrm::Protocol::RM))
    ->Arg(static_cast<int>(rrm::Protocol::RRM))
    ->Unit(benchmark::kMillisecond);

}  // namespace
