// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "qcc/verify.hpp"

using namespace qcc;

namespace {

QuiverPtr quiver(const char* name) { return std::make_shared<const Quiver>(preset_quiver(name)); }

// Generic representation of the Kronecker quiver with dimension (d, d).
Representation kronecker_block(std::uint32_t p, long long d) {
  const auto q = quiver("kronecker");
  FieldMatrix a = FieldMatrix::identity(d, p);
  FieldMatrix b(d, d, p);
  for (long long k = 0; k < d; ++k) {
    b.set(k, k, k % p);
    if (k + 1 < d) b.set(k, k + 1, 1);
  }
  return Representation(q, p, {d, d}, {a, b});
}

Representation a4_sum(std::uint32_t p) {
  const auto q = quiver("a4");
  std::vector<Representation> parts;
  for (int lo = 0; lo < 4; ++lo) parts.push_back(interval_module(q, p, lo, 3));
  parts.push_back(interval_module(q, p, 0, 1));
  return direct_sum(q, p, parts).module;
}

void BM_SubRepsParallel(benchmark::State& state) {
  const auto m = a4_sum(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(all_sub_reps(m));
}
void BM_SubRepsSerial(benchmark::State& state) {
  const auto m = a4_sum(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(all_sub_reps_serial(m));
}
BENCHMARK(BM_SubRepsParallel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SubRepsSerial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_GrCountsParallel(benchmark::State& state) {
  const auto m = kronecker_block(3, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gr_counts(m));
}
void BM_GrCountsSerial(benchmark::State& state) {
  const auto m = kronecker_block(3, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gr_counts_serial(m));
}
BENCHMARK(BM_GrCountsParallel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GrCountsSerial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond)->UseRealTime();

void cdz(benchmark::State& state, Execution exec) {
  const auto q = quiver("kronecker");
  const Context ctx(q, {1, Prefactor::QPower});
  const auto p = static_cast<std::uint32_t>(state.range(0));
  const auto s = standard_modules(q, p);
  const auto m = direct_sum(s.simples[0], s.simples[0]);
  for (auto _ : state) benchmark::DoNotOptimize(cdz_sides(ctx, m, s.simples[1], exec));
}
void BM_CdzParallel(benchmark::State& state) { cdz(state, Execution::Parallel); }
void BM_CdzSerial(benchmark::State& state) { cdz(state, Execution::Serial); }
BENCHMARK(BM_CdzParallel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CdzSerial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond)->UseRealTime();

void weighted(benchmark::State& state, bool parallel) {
  const auto q = quiver("a4");
  const Context ctx(q, {1, Prefactor::QPower});
  const auto p = static_cast<std::uint32_t>(state.range(0));
  const auto m = a4_sum(p);
  const auto n = interval_module(q, p, 1, 2);
  ExtCocycle zero;
  for (const auto& a : q->arrows()) zero.components.push_back(FieldMatrix(n.dim(a.target), m.dim(a.source), p));
  const TriangleData tri = middle_term(m, n, zero);
  WeightTable w;
  for (const auto& l0 : all_sub_reps(tri.middle)) w.set(psi_image(tri, l0), 0);
  for (auto _ : state)
    benchmark::DoNotOptimize(parallel ? weighted_character(tri, w, ctx.euler())
                                      : weighted_character_serial(tri, w, ctx.euler()));
}
void BM_WeightedParallel(benchmark::State& state) { weighted(state, true); }
void BM_WeightedSerial(benchmark::State& state) { weighted(state, false); }
BENCHMARK(BM_WeightedParallel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_WeightedSerial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
