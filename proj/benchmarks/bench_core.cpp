#include <benchmark/benchmark.h>

#include <array>
#include <cstdint>

#include "matising/decompose.hpp"
#include "matising/estimator.hpp"
#include "matising/gen.hpp"
#include "matising/matroid.hpp"
#include "matising/signature.hpp"
#include "matising/tutte.hpp"

using namespace matising;

namespace {

WeightedMatroid random_instance(std::size_t elements, std::uint64_t seed) {
  Rng rng(seed);
  BinaryMatroid m = random_binary_matroid(elements, elements / 2 + 2, rng);
  return make_weighted(m, random_rationals(elements, rng));
}

void BM_RankMask(benchmark::State& state) {
  Rng rng(1);
  const BinaryMatroid m = random_binary_matroid(20, 10, rng);
  std::uint64_t mask = 0x5a5a5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(m.rank_mask(mask & m.ground_mask()));
    mask = mask * 6364136223846793005ULL + 1;
  }
}
BENCHMARK(BM_RankMask);

void BM_ExactSweep(benchmark::State& state) {
  const WeightedMatroid w = random_instance(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(tutte_exact(w));
}
BENCHMARK(BM_ExactSweep)->Arg(12)->Arg(16)->Arg(18);

void BM_FloatSweep(benchmark::State& state) {
  const WeightedMatroidF w =
      to_float(random_instance(static_cast<std::size_t>(state.range(0)), 3));
  for (auto _ : state) benchmark::DoNotOptimize(tutte_float(w));
}
BENCHMARK(BM_FloatSweep)->Arg(16)->Arg(20);

void BM_MinorVector3(benchmark::State& state) {
  Rng rng(4);
  const BinaryMatroid m = random_with_triangle(9, 6, rng);
  const WeightedMatroid w = make_weighted(m, random_rationals(m.size(), rng));
  const std::array<Label, 3> t = {"t1", "t2", "t3"};
  for (auto _ : state) benchmark::DoNotOptimize(minor_vector_3(w, t));
}
BENCHMARK(BM_MinorVector3);

void BM_DeltaSum(benchmark::State& state) {
  Rng rng(5);
  const auto [m1, m2] = planted_2sum_pair(7, 7, rng);
  for (auto _ : state) benchmark::DoNotOptimize(delta_sum(m1, m2));
}
BENCHMARK(BM_DeltaSum);

void BM_Find2Sum(benchmark::State& state) {
  Rng rng(6);
  const auto [m1, m2] = planted_2sum_pair(7, 7, rng);
  const BinaryMatroid glued = delta_sum(m1, m2);
  for (auto _ : state) benchmark::DoNotOptimize(find_2sum(glued));
}
BENCHMARK(BM_Find2Sum);

void BM_ClampSignature(benchmark::State& state) {
  const std::array<double, 3> sig{1.21, 1.47, 1.68};
  for (auto _ : state) benchmark::DoNotOptimize(clamp_signature(sig, 1e-4));
}
BENCHMARK(BM_ClampSignature);

void BM_I3Weights(benchmark::State& state) {
  const Signature sig{1.3, 1.4, 1.5};
  for (auto _ : state) benchmark::DoNotOptimize(i3_weights(sig));
}
BENCHMARK(BM_I3Weights);

void BM_Estimate(benchmark::State& state) {
  Rng rng(7);
  const RegularComposite built = random_regular_with_certificate(16, 20, rng);
  EstimateRequest req;
  req.w = to_float(unit_weighted(built.matroid));
  req.eps = 0.5;
  req.certificate = &built.certificate;
  req.oracle = state.range(0) ? OracleMode::Noisy : OracleMode::Exact;
  for (auto _ : state) {
    req.seed += 1;
    benchmark::DoNotOptimize(estimate(req));
  }
}
BENCHMARK(BM_Estimate)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
