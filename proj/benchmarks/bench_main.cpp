#include <benchmark/benchmark.h>

#include "erq/generators.hpp"
#include "erq/graph.hpp"
#include "erq/linalg.hpp"
#include "erq/oracle.hpp"
#include "erq/property_testing.hpp"
#include "erq/reconstruction.hpp"
#include "erq/verify.hpp"

namespace {

void bm_oracle_query(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const erq::WeightedGraph g = erq::random_connected(n, 2 * n, 7);
  erq::ErOracle o(g);
  int u = 0;
  for (auto _ : state) {
    const int v = 1 + (u + 1) % (n - 1);
    benchmark::DoNotOptimize(o.er_query(u % (n - 1), v));
    ++u;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(bm_oracle_query)->Arg(32)->Arg(128)->Arg(512);

void bm_all_pairs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const erq::WeightedGraph g = erq::random_connected(n, 2 * n, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(erq::all_pairs_er(g));
  }
}
BENCHMARK(bm_all_pairs)->Arg(16)->Arg(64)->Arg(128);

void bm_reconstruct_full(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const erq::WeightedGraph g =
      erq::with_random_weights(erq::random_connected(n, 2 * n, 13), 0.5, 2.0, 13);
  for (auto _ : state) {
    erq::ErOracle o(g);
    benchmark::DoNotOptimize(erq::reconstruct_full(o));
  }
}
BENCHMARK(bm_reconstruct_full)->Arg(16)->Arg(32)->Arg(64);

void bm_reconstruct_td(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const erq::Generated gen = erq::partial_ktree(n, 3, 0.5, 17);
  for (auto _ : state) {
    erq::ErOracle o(gen.graph);
    benchmark::DoNotOptimize(erq::reconstruct_from_td(o, *gen.td));
  }
}
BENCHMARK(bm_reconstruct_td)->Arg(16)->Arg(32)->Arg(64);

void bm_verify_cut_vertex(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const erq::WeightedGraph g = erq::random_connected(n, 2 * n, 19);
  for (auto _ : state) {
    erq::ErOracle o(g);
    benchmark::DoNotOptimize(erq::is_cut_vertex(o, n / 2));
  }
}
BENCHMARK(bm_verify_cut_vertex)->Arg(32)->Arg(128);

void bm_vertex_biconnectivity_test(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const erq::WeightedGraph g = erq::cycle_graph(n);
  for (auto _ : state) {
    erq::ErOracle o(g);
    benchmark::DoNotOptimize(erq::test_vertex_biconnectivity(o, 0.5, 23));
  }
}
BENCHMARK(bm_vertex_biconnectivity_test)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
