#include <benchmark/benchmark.h>

#include "entprobe/discrim.hpp"
#include "entprobe/mc.hpp"
#include "entprobe/random.hpp"

using namespace entprobe;

static void BM_Kron(benchmark::State& state) {
  const auto d = static_cast<Index>(state.range(0));
  CounterRng rng(1);
  const ComplexMatrix a = random::haar_unitary(d, rng), b = random::haar_unitary(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(linops::kron(a, b));
}
BENCHMARK(BM_Kron)->Arg(4)->Arg(8)->Arg(16);

static void BM_EigUnitary(benchmark::State& state) {
  const auto d = static_cast<Index>(state.range(0));
  CounterRng rng(2);
  const ComplexMatrix u = random::haar_unitary(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(linops::eig_unitary(u));
}
BENCHMARK(BM_EigUnitary)->Arg(2)->Arg(8)->Arg(32);

static void BM_MinOverlap(benchmark::State& state) {
  const auto d = static_cast<Index>(state.range(0));
  CounterRng rng(3);
  const ComplexMatrix w = random::haar_unitary(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(discrim::min_overlap_r(w));
}
BENCHMARK(BM_MinOverlap)->Arg(2)->Arg(8)->Arg(32);

static void BM_CopiesForPerfect(benchmark::State& state) {
  ComplexMatrix w = ComplexMatrix::Identity(3, 3);
  w(1, 1) = std::polar(1.0, 0.05);
  w(2, 2) = std::polar(1.0, 0.1);
  const discrim::DiscriminationProblem p(w, ComplexMatrix::Identity(3, 3));
  for (auto _ : state) benchmark::DoNotOptimize(discrim::copies_for_perfect(p, 100));
}
BENCHMARK(BM_CopiesForPerfect);

static void BM_HolevoChi(benchmark::State& state) {
  const auto d = static_cast<Index>(state.range(0));
  CounterRng rng(4);
  const auto group = discrim::weyl_heisenberg_group(d);
  const ProbeState e = random::random_probe(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(discrim::holevo_chi(group, e));
}
BENCHMARK(BM_HolevoChi)->Arg(2)->Arg(3)->Arg(4);

static void BM_SampleHelstrom(benchmark::State& state) {
  ComplexMatrix u2(2, 2);
  u2 << 0.8, -0.6, 0.6, 0.8;
  const discrim::DiscriminationProblem p(ComplexMatrix::Identity(2, 2), u2);
  ComplexVector psi = ComplexVector::Zero(2);
  psi(0) = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc::sample_helstrom(p, psi, static_cast<std::uint64_t>(state.range(0)), 7));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleHelstrom)->Arg(10000)->Arg(100000);

static void BM_SampleHeterodyne(benchmark::State& state) {
  const auto trials = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc::sample_heterodyne(0.5, {0.1, 0.2},
                                                   mc::scheme_noise(mc::Scheme::Entangled, 0.3),
                                                   mc::Scheme::Entangled, trials, 9));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleHeterodyne)->Arg(10000)->Arg(100000);
BENCHMARK_MAIN();
