#include <benchmark/benchmark.h>

#include "gsteer/oracle.hpp"
#include "gsteer/random.hpp"
#include "gsteer/steering.hpp"
#include "gsteer/symplectic.hpp"
#include "gsteer/twomode.hpp"

using namespace gsteer;

static void BM_SteeringMeasure(benchmark::State& state) {
  const int modes = static_cast<int>(state.range(0));
  const CovarianceMatrix sigma = random_cm(modes, modes, 5.0, std::uint64_t{7});
  for (auto _ : state) {
    benchmark::DoNotOptimize(steering_measure(sigma, Direction::AtoB));
  }
}
BENCHMARK(BM_SteeringMeasure)->DenseRange(1, 4);

static void BM_SymplecticSpectrum(benchmark::State& state) {
  const int modes = static_cast<int>(state.range(0));
  Rng rng(11);
  const Matrix m = random_single_party_cm(modes, 5.0, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(symplectic_eigenvalues(m));
  }
}
BENCHMARK(BM_SymplecticSpectrum)->RangeMultiplier(2)->Range(1, 16);

static void BM_DenseCrosscheck(benchmark::State& state) {
  const int modes = static_cast<int>(state.range(0));
  Rng rng(11);
  const Matrix m = random_single_party_cm(modes, 5.0, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dense_eigen_crosscheck(m));
  }
}
BENCHMARK(BM_DenseCrosscheck)->RangeMultiplier(2)->Range(1, 16);

static void BM_BonaFide(benchmark::State& state) {
  const int modes = static_cast<int>(state.range(0));
  const CovarianceMatrix sigma = random_cm(modes, modes, 5.0, std::uint64_t{3});
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_bona_fide(sigma));
  }
}
BENCHMARK(BM_BonaFide)->DenseRange(1, 4);

static void BM_ClassifyCell(benchmark::State& state) {
  const PurityProfile p = PurityProfile::from_ratio(0.4, 0.7, 0.5);
  for (auto _ : state) {
    auto label = classify_two_mode(p);
    auto witness = witness_state(p);
    benchmark::DoNotOptimize(label);
    benchmark::DoNotOptimize(witness);
  }
}
BENCHMARK(BM_ClassifyCell);

static void BM_SampleGaussian(benchmark::State& state) {
  const CovarianceMatrix sigma = tmsv_state(2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_gaussian(sigma, state.range(0), 42, 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleGaussian)->RangeMultiplier(10)->Range(1000, 100000);

BENCHMARK_MAIN();
