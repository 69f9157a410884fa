// Construction, action and word-problem timings.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "affauto/affauto.hpp"

using namespace affauto;

namespace {

  std::vector<IntMatrix> gros_set() {
    auto const [a, b] = sanov_pair();
    return block_extend({IntMatrix::identity(4), IntMatrix::identity(4)}, {a, b});
  }

  void BM_BuildSingle(benchmark::State& state) {
    auto const d = static_cast<std::size_t>(state.range(0));
    IntMatrix  m = IntMatrix::identity(d);
    for (std::size_t i = 0; i + 1 < d; ++i) {
      m(i, i + 1) = 1;
    }
    for (auto _ : state) {
      benchmark::DoNotOptimize(build_single(m, 3));
    }
  }
  BENCHMARK(BM_BuildSingle)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);

  void BM_BuildGros(benchmark::State& state) {
    auto const ms = gros_set();
    for (auto _ : state) {
      benchmark::DoNotOptimize(build_union(ms, 2, BuildOptions{64}));
    }
  }
  BENCHMARK(BM_BuildGros)->Unit(benchmark::kMillisecond);

  void BM_WellDefinedness(benchmark::State& state) {
    auto const aut = build_union({IntMatrix{{1, 2}, {0, 1}}, IntMatrix{{1, 0}, {2, 1}}}, 3);
    for (auto _ : state) {
      benchmark::DoNotOptimize(well_definedness_check(aut));
    }
  }
  BENCHMARK(BM_WellDefinedness)->Unit(benchmark::kMicrosecond);

  void BM_Act(benchmark::State& state) {
    auto const      aut = build_single(IntMatrix{{2, 1}, {1, 1}}, 3);
    std::mt19937_64 rng(1);
    std::vector<Factor> f;
    for (int i = 0; i < 8; ++i) {
      f.push_back({static_cast<StateId>(rng() % aut.size()), (rng() & 1) ? 1 : -1});
    }
    std::vector<LetterIndex> u(static_cast<std::size_t>(state.range(0)));
    for (auto& x : u) {
      x = static_cast<LetterIndex>(rng() % aut.alphabet_size());
    }
    for (auto _ : state) {
      auto v = u;
      act(aut, f, v);
      benchmark::DoNotOptimize(v);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
  }
  BENCHMARK(BM_Act)->RangeMultiplier(8)->Range(8, 4096);

  void BM_RelationBS12(benchmark::State& state) {
    auto const aut = build_single(IntMatrix{{2}}, 3);
    for (auto _ : state) {
      benchmark::DoNotOptimize(verify_relation(aut, 0, 0));
    }
  }
  BENCHMARK(BM_RelationBS12)->Unit(benchmark::kMicrosecond);

  void BM_RelationGros(benchmark::State& state) {
    auto const aut = build_union(gros_set(), 2, BuildOptions{64});
    auto const j   = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
      benchmark::DoNotOptimize(verify_relation(aut, 0, j));
    }
  }
  BENCHMARK(BM_RelationGros)->Arg(0)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

  void BM_SanovCommutator(benchmark::State& state) {
    auto const [a, b] = sanov_pair();
    auto const aut    = build_union({a, b}, 3);
    auto const w      = commutator(linear_word(aut, 0), linear_word(aut, 1));
    for (auto _ : state) {
      benchmark::DoNotOptimize(is_identity(w));
    }
  }
  BENCHMARK(BM_SanovCommutator)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
