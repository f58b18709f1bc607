#include <benchmark/benchmark.h>

#include <random>

#include "abslog/builtins.hpp"
#include "abslog/cartesian.hpp"
#include "abslog/generators.hpp"
#include "abslog/logicgen.hpp"
#include "abslog/octagon.hpp"
#include "abslog/proofengine.hpp"

using namespace abslog;

namespace {

const char* kNames[] = {"chain3", "diamond", "interval", "m3", "octagon", "parity", "sign"};

ProofSystem system_of(const Abstraction& abs) { return generate_proof_system(abs, preservation_report(abs)); }

void BM_PreservationReport(benchmark::State& state) {
  auto abs = builtin(kNames[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(preservation_report(*abs));
  state.SetLabel(kNames[state.range(0)]);
}
BENCHMARK(BM_PreservationReport)->DenseRange(0, 6);

void BM_EngineConstruction(benchmark::State& state) {
  auto abs = builtin(kNames[state.range(0)]);
  auto ps = system_of(*abs);
  for (auto _ : state) {
    ProofEngine e(ps);
    benchmark::DoNotOptimize(e.saturated_models().size());
  }
  state.SetLabel(kNames[state.range(0)]);
}
BENCHMARK(BM_EngineConstruction)->DenseRange(0, 6)->Unit(benchmark::kMillisecond);

void BM_DerivableCompound(benchmark::State& state) {
  auto abs = builtin("parity");
  ProofEngine e(system_of(*abs));
  auto s = parse_sequent("(Even(x) -> bot(x)) | ~Odd(x), top(x) |- Even(x) <- (Odd(x) & ~bot(x))");
  for (auto _ : state) benchmark::DoNotOptimize(e.derivable_unnormalized(s));
}
BENCHMARK(BM_DerivableCompound);

void BM_Minimize(benchmark::State& state) {
  auto abs = builtin(kNames[state.range(0)]);
  auto ps = system_of(*abs);
  for (auto _ : state) benchmark::DoNotOptimize(minimize_proof_system(ps));
  state.SetLabel(kNames[state.range(0)]);
}
BENCHMARK(BM_Minimize)->Arg(5)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_VerifyRandom(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<Abstraction> abs;
  for (int k = 0; k < 10; ++k) abs.push_back(random_abstraction(rng));
  for (auto _ : state)
    for (const auto& a : abs) {
      ProofEngine e(system_of(a));
      benchmark::DoNotOptimize(verify_soundness(a, e).sound);
      benchmark::DoNotOptimize(verify_completeness(a, e).status);
    }
}
BENCHMARK(BM_VerifyRandom)->Unit(benchmark::kMillisecond);

void BM_OctagonSuite(benchmark::State& state) {
  const int C = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(octagon::verify_suite(C, 4 * C));
}
BENCHMARK(BM_OctagonSuite)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_CartesianGalois(benchmark::State& state) {
  auto t = ConcreteUniverse::tuples({{0, 4}, {0, 4}});
  for (auto _ : state) benchmark::DoNotOptimize(cartesian::check_galois(t).holds);
}
BENCHMARK(BM_CartesianGalois)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
