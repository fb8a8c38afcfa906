#include <benchmark/benchmark.h>

#include "rrm/haar.hpp"
#include "rrm/linalg.hpp"
#include "rrm/zoo.hpp"

namespace {

void BM_HaarOrthogonal(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  rrm::Rng rng = rrm::make_rng({1, 0});
  for (auto _ : state) benchmark::DoNotOptimize(rrm::haar_orthogonal(d, rng));
}
BENCHMARK(BM_HaarOrthogonal)->Arg(2)->Arg(3)->Arg(9)->Arg(32);

void BM_HaarUnitary(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  rrm::Rng rng = rrm::make_rng({1, 0});
  for (auto _ : state) benchmark::DoNotOptimize(rrm::haar_unitary(d, rng));
}
BENCHMARK(BM_HaarUnitary)->Arg(2)->Arg(3)->Arg(9)->Arg(32);

void BM_MakeRng(benchmark::State& state) {
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(rrm::make_rng({7, i++})());
}
BENCHMARK(BM_MakeRng);

// One site of a 5-qubit operator.
void BM_ApplyLocal(benchmark::State& state) {
  const rrm::DensityMatrix rho = rrm::named_state({"noisy_ghz", {{"n", 5}, {"p", 0.3}}});
  rrm::Rng rng = rrm::make_rng({2, 0});
  const rrm::CMatrix u = rrm::haar_unitary(2, rng);
  const int site = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rrm::apply_local(rho.matrix(), rho.dims(), site, u));
}
BENCHMARK(BM_ApplyLocal)->Arg(0)->Arg(4);

void BM_VerifyHaar(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(rrm::verify_haar_sampler(3, 1000, 3, 1).pass());
}
BENCHMARK(BM_VerifyHaar)->Unit(benchmark::kMillisecond);

}  // namespace
