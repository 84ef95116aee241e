#include "shadowing/certify.hpp"
#include "shadowing/direct.hpp"
#include "shadowing/generate.hpp"
#include "shadowing/shadow.hpp"

#include <benchmark/benchmark.h>

using namespace shadowing;

namespace {

const CertifiedConstants<Rational>& shift_constants() {
  static const auto c = derive_constants(ShiftSystem(), pow2(-6), Provenance::Exhaustion, "bench");
  return c;
}

const CertifiedConstants<QuadraticNumber>& toral_constants() {
  static const auto c = derive_constants(ToralSystem(), QuadraticNumber(ratio(1, 64)), Provenance::Sweep, "bench");
  return c;
}

void BM_QuadraticFloor(benchmark::State& state) {
  Rng rng(1);
  std::vector<QuadraticNumber> xs;
  for (int i = 0; i < 256; ++i) {
    xs.emplace_back(ratio(uniform_int(rng, -1 << 20, 1 << 20), 977), ratio(uniform_int(rng, -1 << 20, 1 << 20), 1013));
  }
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(xs[i++ % xs.size()].floor());
}
BENCHMARK(BM_QuadraticFloor);

void BM_CatIterate(benchmark::State& state) {
  const ToralSystem sys;
  Rng rng(2);
  const ToralPoint p = sys.random_point(rng);
  for (auto _ : state) benchmark::DoNotOptimize(sys.iterate(p, state.range(0)));
}
BENCHMARK(BM_CatIterate)->Arg(1)->Arg(16)->Arg(256);

void BM_ShiftDist(benchmark::State& state) {
  const ShiftSystem sys;
  Rng rng(3);
  const ShiftPoint p = sys.random_point(rng);
  const ShiftPoint q = sys.perturb(p, pow2(-static_cast<std::int64_t>(state.range(0))), rng);
  for (auto _ : state) benchmark::DoNotOptimize(sys.dist(p, q));
}
BENCHMARK(BM_ShiftDist)->Arg(4)->Arg(20);

template <class S, class C>
void run_inductive(benchmark::State& state, const S& sys, const C& c) {
  Rng rng(4);
  const auto xi = generate_pseudo_orbit(sys, state.range(0), c.rho.value, GapRange{1, 2 * c.N.value + 4}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(inductive_shadow(c, xi));
}

void BM_InductiveShift(benchmark::State& state) { run_inductive(state, ShiftSystem(), shift_constants()); }
BENCHMARK(BM_InductiveShift)->DenseRange(0, 8, 2)->Unit(benchmark::kMicrosecond);

void BM_InductiveToral(benchmark::State& state) { run_inductive(state, ToralSystem(), toral_constants()); }
BENCHMARK(BM_InductiveToral)->DenseRange(0, 4, 1)->Unit(benchmark::kMicrosecond);

void BM_DirectShift(benchmark::State& state) {
  const auto& c = shift_constants();
  Rng rng(5);
  const auto xi = generate_pseudo_orbit(ShiftSystem(), state.range(0), c.rho.value, GapRange{1, 16}, rng);
  const Window w = default_window(xi, c.N.value, 0);
  for (auto _ : state) benchmark::DoNotOptimize(direct_shadow(xi, c.epsilon.value, w));
}
BENCHMARK(BM_DirectShift)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_DirectToral(benchmark::State& state) {
  const auto& c = toral_constants();
  Rng rng(6);
  const auto xi = generate_pseudo_orbit(ToralSystem(), state.range(0), c.rho.value, GapRange{1, 14}, rng);
  const Window w = default_window(xi, c.N.value, 0);
  for (auto _ : state) benchmark::DoNotOptimize(direct_shadow(xi, c.epsilon.value, w));
}
BENCHMARK(BM_DirectToral)->Arg(4)->Unit(benchmark::kMicrosecond);

void BM_Falsify(benchmark::State& state) {
  const ShiftSystem sys;
  const auto& c = shift_constants();
  for (auto _ : state) benchmark::DoNotOptimize(semiexp_falsify(sys, c.delta.value, c.epsilon.value, 100, 1));
}
BENCHMARK(BM_Falsify)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
