#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "erq/errors.hpp"
#include "erq/generators.hpp"
#include "erq/graph.hpp"
#include "erq/linalg.hpp"
#include "erq/oracle.hpp"
#include "erq/reconstruction.hpp"
#include "erq/rng.hpp"
#include "erq/tree_decomposition.hpp"
#include "support/reference.hpp"

namespace {

std::int64_t choose2(std::int64_t n) { return n * (n - 1) / 2; }

}  // namespace

TEST_CASE("full reconstruction round-trips random weighted graphs") {
  erq::Rng rng(137);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + rng.index(18);  // up to 20
    const erq::WeightedGraph g = ref::random_connected(rng, n, rng.index(2 * n), 0.5, 2.0);
    erq::ErOracle o(g);
    const erq::ReconstructionResult r = erq::reconstruct_full(o);
    CHECK(r.queries_used.distinct == choose2(n));
    CHECK(erq::max_weight_error(g, r.graph) < 1e-6);
  }
}

TEST_CASE("full reconstruction handles disconnected hidden graphs") {
  // Two components; every cross pair answers infinite but still costs a query.
  const erq::WeightedGraph g(7, {{0, 1, 1.5}, {1, 2, 0.75}, {0, 2, 1.0},
                                 {3, 4, 2.0}, {4, 5, 1.0}, {5, 6, 1.25}, {3, 6, 0.5}});
  erq::ErOracle o(g);
  const erq::ReconstructionResult r = erq::reconstruct_full(o);
  CHECK(r.queries_used.distinct == choose2(7));
  CHECK(erq::max_weight_error(g, r.graph) < 1e-6);
  CHECK(r.graph.component_count() == 2);
}

TEST_CASE("schur reconstruction matches the direct reduction of the hidden graph") {
  erq::Rng rng(139);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 5 + rng.index(10);
    const erq::WeightedGraph g = ref::random_connected(rng, n, rng.index(n), 0.5, 2.0);
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) pool[static_cast<std::size_t>(v)] = v;
    rng.shuffle(pool);
    const int k = 2 + rng.index(n - 2);
    const std::vector<int> keep(pool.begin(), pool.begin() + k);

    erq::ErOracle o(g);
    const erq::SchurReconstruction got = erq::reconstruct_schur(o, keep);
    CHECK(got.queries_used.distinct == choose2(k));

    const erq::SchurResult want = erq::schur_complement(g, keep);
    CHECK(got.vertex_map == want.vertex_map);
    CHECK(erq::max_weight_error(got.graph, want.graph) < 1e-6);

    // Resistances on the kept set are preserved exactly (up to numerics).
    for (int a = 0; a < k; ++a) {
      for (int b = a + 1; b < k; ++b) {
        const double inner = erq::effective_resistance(got.graph, a, b).value();
        const double outer =
            erq::effective_resistance(g, got.vertex_map[static_cast<std::size_t>(a)],
                                      got.vertex_map[static_cast<std::size_t>(b)])
                .value();
        CHECK(inner == doctest::Approx(outer).epsilon(1e-7));
      }
    }
  }
}

TEST_CASE("schur reconstruction validates and deduplicates the kept set") {
  erq::ErOracle o(erq::cycle_graph(6));
  CHECK_THROWS_AS(erq::reconstruct_schur(o, {}), erq::BadParams);
  CHECK_THROWS_AS(erq::reconstruct_schur(o, {0, 9}), erq::BadParams);

  erq::ErOracle o2(erq::cycle_graph(6));
  const erq::SchurReconstruction r = erq::reconstruct_schur(o2, {4, 1, 4, 1});
  CHECK(r.vertex_map == std::vector<int>{1, 4});
  CHECK(r.queries_used.distinct == 1);
  // C6 reduced to two antipodal vertices: two length-3 paths in parallel.
  CHECK(erq::effective_resistance(r.graph, 0, 1).value() == doctest::Approx(1.5));
}

TEST_CASE("neighbor discovery reads off adjacency on unweighted graphs") {
  erq::Rng rng(149);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + rng.index(10);
    const erq::WeightedGraph g = ref::random_connected(rng, n, rng.index(n));
    const int v = rng.index(n);
    erq::ErOracle o(g);
    const auto found = erq::discover_neighbors(o, v);
    REQUIRE(static_cast<int>(found.size()) == g.degree_count(v));
    for (std::size_t i = 0; i < found.size(); ++i) {
      CHECK(found[i].first == g.neighbors(v)[i].first);
      CHECK(found[i].second == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
}

TEST_CASE("neighborhood cache pays for each vertex once") {
  const erq::WeightedGraph g = erq::cycle_graph(8);
  erq::ErOracle o(g);
  erq::NeighborhoodCache cache(o);
  const auto first = cache.neighbors(3);
  const erq::QueryLedger after_first = o.ledger();
  CHECK(after_first.distinct > 0);
  const auto second = cache.neighbors(3);
  CHECK(o.ledger() == after_first);
  CHECK(first == second);
  cache.neighbors(4);
  CHECK(o.ledger().distinct > after_first.distinct);
}

TEST_CASE("decomposition-guided reconstruction stays on its bag budget") {
  erq::Rng rng(151);
  for (std::uint64_t seed : {31ULL, 32ULL, 33ULL, 34ULL}) {
    const erq::Generated cat = erq::caterpillar(12, seed);
    erq::ErOracle o(cat.graph);
    const erq::ReconstructionResult r = erq::reconstruct_from_td(o, *cat.td);
    CHECK(erq::max_weight_error(cat.graph, r.graph) < 1e-6);
    CHECK(r.queries_used.distinct <=
          cat.td->bag_count() * choose2(cat.td->width() + 1));
    CHECK(r.queries_used.distinct < choose2(12));

    const int k = 2 + static_cast<int>(seed % 2);  // widths 2 and 3
    const erq::Generated pkt = erq::partial_ktree(13, k, 0.6, seed);
    erq::ErOracle o2(pkt.graph);
    const erq::ReconstructionResult r2 = erq::reconstruct_from_td(o2, *pkt.td);
    CHECK(erq::max_weight_error(pkt.graph, r2.graph) < 1e-6);
    CHECK(r2.queries_used.distinct <=
          pkt.td->bag_count() * choose2(pkt.td->width() + 1));
    CHECK(r2.queries_used.distinct < choose2(13));
  }

  // Weighted hidden graphs work as well: reuse a tree's edge decomposition.
  const erq::WeightedGraph tree = ref::random_tree(rng, 11, 0.5, 2.0);
  const erq::TreeDecomposition etd = erq::tree_edge_decomposition(tree);
  erq::ErOracle o3(tree);
  const erq::ReconstructionResult r3 = erq::reconstruct_from_td(o3, etd);
  CHECK(erq::max_weight_error(tree, r3.graph) < 1e-6);
  CHECK(r3.queries_used.distinct <= etd.bag_count() * choose2(etd.width() + 1));
}

TEST_CASE("decomposition-guided reconstruction rejects bad decompositions") {
  erq::TreeDecomposition malformed;
  malformed.bags = {{1, 0}, {1, 2}};  // unsorted bag
  malformed.tree_edges = {{0, 1}};
  erq::ErOracle o(erq::path_graph(3));
  CHECK_THROWS_AS(erq::reconstruct_from_td(o, malformed), erq::InvalidDecomposition);

  erq::TreeDecomposition uncovered;  // misses vertex 3 entirely
  uncovered.bags = {{0, 1}, {1, 2}};
  uncovered.tree_edges = {{0, 1}};
  erq::ErOracle o2(erq::path_graph(4));
  CHECK_THROWS_AS(erq::reconstruct_from_td(o2, uncovered), erq::InvalidDecomposition);

  erq::TreeDecomposition torn;  // vertex 1's bags do not form a subtree
  torn.bags = {{0, 1}, {2}, {1, 2, 3}};
  torn.tree_edges = {{0, 1}, {1, 2}};
  erq::ErOracle o3(erq::path_graph(4));
  CHECK_THROWS_AS(erq::reconstruct_from_td(o3, torn), erq::InvalidDecomposition);

  // A decomposition that is structurally valid but describes a different
  // graph is trusted: the result fits the decomposition, not the hidden
  // graph (here the edge closing the cycle has no bag, so it cannot appear).
  erq::TreeDecomposition path_td;
  path_td.bags = {{0, 1}, {1, 2}, {2, 3}, {3, 4}};
  path_td.tree_edges = {{0, 1}, {1, 2}, {2, 3}};
  erq::ErOracle o4(erq::cycle_graph(5));
  const erq::ReconstructionResult fitted = erq::reconstruct_from_td(o4, path_td);
  CHECK(erq::validate_tree_decomposition(fitted.graph, path_td).valid);
  CHECK_FALSE(fitted.graph.has_edge(0, 4));
  CHECK(erq::max_weight_error(erq::cycle_graph(5), fitted.graph) > 0.1);
}

namespace {

// Builds the completion instance whose known part is every pair outside
// `unknown` (positive true weights only) and whose hidden graph is g.
erq::CompletionInstance instance_from(const erq::WeightedGraph& g,
                                      std::vector<std::pair<int, int>> unknown,
                                      std::vector<double> weight_set = {}) {
  erq::CompletionInstance inst;
  inst.n = g.vertex_count();
  inst.unknown = std::move(unknown);
  inst.weight_set = std::move(weight_set);
  std::set<std::pair<int, int>> skip;
  for (auto [u, v] : inst.unknown) skip.insert({std::min(u, v), std::max(u, v)});
  for (const auto& e : g.edges()) {
    if (!skip.count({e.u, e.v})) inst.known[{e.u, e.v}] = e.w;
  }
  return inst;
}

}  // namespace

TEST_CASE("quadratic completion recovers weights through the known blocks") {
  erq::Rng rng(157);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 5 + rng.index(8);
    const erq::WeightedGraph g = ref::random_connected(rng, n, 2 + rng.index(n), 0.5, 2.0);
    const int k = 1 + rng.index(3);
    std::vector<std::pair<int, int>> unknown;
    std::set<std::pair<int, int>> used;
    while (static_cast<int>(unknown.size()) < k) {
      const int u = rng.index(n);
      int v = rng.index(n - 1);
      if (v >= u) ++v;
      const std::pair<int, int> p{std::min(u, v), std::max(u, v)};
      if (used.insert(p).second) unknown.push_back(p);
    }
    const erq::CompletionInstance inst = instance_from(g, unknown);

    erq::ErOracle o(g);
    const erq::CompletionResult r = erq::complete_quadratic(o, inst);
    std::set<int> endpoints;
    for (auto [u, v] : unknown) {
      endpoints.insert(u);
      endpoints.insert(v);
    }
    CHECK(r.queries_used.distinct ==
          choose2(static_cast<std::int64_t>(endpoints.size())));
    CHECK(r.queries_used.distinct <= choose2(2 * k));
    REQUIRE(r.recovered.size() == unknown.size());
    for (std::size_t i = 0; i < unknown.size(); ++i) {
      const double truth = g.weight(unknown[i].first, unknown[i].second);
      CHECK(r.recovered[i] == doctest::Approx(truth).epsilon(1e-6).scale(1.0));
    }
    CHECK(erq::max_weight_error(g, r.graph) < 1e-6);
  }
}

TEST_CASE("quadratic completion cross-checks known pairs inside the endpoint set") {
  // Unknown pairs (0,1) and (1,2) put {0,1,2} in the endpoint set; the known
  // pair (0,2) is re-derived by the reduction and must agree.
  const erq::WeightedGraph g(4, {{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 1.5}, {2, 3, 1.0}});
  erq::CompletionInstance inst = instance_from(g, {{0, 1}, {1, 2}});
  REQUIRE(inst.known.count({0, 2}) == 1);

  erq::ErOracle ok(g);
  CHECK(erq::complete_quadratic(ok, inst).recovered.size() == 2);

  erq::CompletionInstance corrupted = inst;
  corrupted.known[{0, 2}] = 5.0;
  erq::ErOracle bad(g);
  CHECK_THROWS_AS(erq::complete_quadratic(bad, corrupted), erq::InconsistentKnownPart);

  // A known zero inside the endpoint set is checked against the floor.
  const erq::WeightedGraph sparse(4, {{0, 1, 1.0}, {1, 2, 2.0}, {2, 3, 1.0}, {0, 3, 1.0}});
  erq::CompletionInstance zero_inside = instance_from(sparse, {{0, 1}, {1, 2}});
  zero_inside.known[{0, 2}] = 0.0;
  erq::ErOracle sp(sparse);
  const erq::CompletionResult rz = erq::complete_quadratic(sp, zero_inside);
  CHECK(rz.recovered[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(rz.recovered[1] == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("exhaustive completion recovers the hidden assignment with k queries") {
  erq::Rng rng(163);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 4 + rng.index(7);  // up to 10
    std::vector<double> weight_set{0.5, 1.0, 2.0};
    const int set_size = 2 + rng.index(2);
    weight_set.resize(static_cast<std::size_t>(set_size));

    // Hidden graph: a random tree (weights from the set) plus up to two
    // extra edges whose weights also come from the set.
    std::vector<erq::Edge> edges;
    for (int v = 1; v < n; ++v) {
      edges.push_back({rng.index(v), v,
                       weight_set[static_cast<std::size_t>(rng.index(set_size))]});
    }
    for (int extra = rng.index(3); extra > 0; --extra) {
      const int u = rng.index(n);
      int v = rng.index(n - 1);
      if (v >= u) ++v;
      edges.push_back({u, v, weight_set[static_cast<std::size_t>(rng.index(set_size))]});
    }
    const erq::WeightedGraph g(n, edges);

    // Unknown pairs: a few true edges (parallel merges may have produced
    // weights outside the set, so filter to in-set weights).
    std::vector<std::pair<int, int>> candidates;
    for (const auto& e : g.edges()) {
      if (std::find(weight_set.begin(), weight_set.end(), e.w) != weight_set.end()) {
        candidates.push_back({e.u, e.v});
      }
    }
    if (candidates.empty()) continue;
    rng.shuffle(candidates);
    const int k = 1 + rng.index(std::min<int>(6, static_cast<int>(candidates.size())));
    candidates.resize(static_cast<std::size_t>(k));

    const erq::CompletionInstance inst = instance_from(g, candidates, weight_set);
    erq::ErOracle o(g);
    const erq::CompletionResult r = erq::complete_exhaustive(o, inst);
    CHECK(r.queries_used.distinct == k);
    CHECK(r.queries_used.total == k);
    std::int64_t expected_total = 1;
    for (int i = 0; i < k; ++i) expected_total *= set_size;
    CHECK(r.candidates_total == expected_total);
    CHECK(r.candidates_evaluated <= r.candidates_total);
    REQUIRE(r.recovered.size() == candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      CHECK(r.recovered[i] == g.weight(candidates[i].first, candidates[i].second));
    }
    CHECK(erq::max_weight_error(g, r.graph) == 0.0);
  }
}

TEST_CASE("exhaustive completion recovers absent edges when zero is a candidate") {
  // Hidden: path 0-1-2-3; the pair (0,3) is unknown and truly absent.
  const erq::WeightedGraph g(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}});
  erq::CompletionInstance inst = instance_from(g, {{0, 3}, {1, 2}}, {0.0, 1.0});
  erq::ErOracle o(g);
  const erq::CompletionResult r = erq::complete_exhaustive(o, inst);
  CHECK(r.recovered == std::vector<double>{0.0, 1.0});
  CHECK(r.queries_used.distinct == 2);
  CHECK(r.candidates_total == 4);
}

TEST_CASE("exhaustive completion reports the no-candidate and ambiguous cases") {
  // The unknown edge is a bridge with true weight 1; a candidate set without
  // 1 cannot reproduce R = 1 across it.
  const erq::WeightedGraph g(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}});
  erq::CompletionInstance miss = instance_from(g, {{1, 2}}, {2.0, 3.0});
  erq::ErOracle o1(g);
  CHECK_THROWS_AS(erq::complete_exhaustive(o1, miss), erq::NoConsistentCompletion);

  // Candidate weights closer together than the matching tolerance are
  // indistinguishable, which must surface as ambiguity, not a silent pick.
  erq::CompletionInstance blur = instance_from(g, {{1, 2}}, {1.0, 1.0 + 1e-9});
  erq::ErOracle o2(g);
  CHECK_THROWS_AS(erq::complete_exhaustive(o2, blur), erq::AmbiguousCompletion);

  // Validation failures: overlapping pair sets, bad weights, empty set.
  erq::CompletionInstance overlap = instance_from(g, {{1, 2}}, {1.0});
  overlap.known[{1, 2}] = 1.0;
  erq::ErOracle o3(g);
  CHECK_THROWS_AS(erq::complete_exhaustive(o3, overlap), erq::BadParams);

  erq::CompletionInstance empty_set = instance_from(g, {{1, 2}});
  erq::ErOracle o4(g);
  CHECK_THROWS_AS(erq::complete_exhaustive(o4, empty_set), erq::BadParams);

  erq::CompletionInstance negative = instance_from(g, {{1, 2}}, {-1.0, 1.0});
  erq::ErOracle o5(g);
  CHECK_THROWS_AS(erq::complete_exhaustive(o5, negative), erq::BadParams);
}

TEST_CASE("completions of distinct assignments have distinct observations") {
  erq::Rng rng(167);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 3 + rng.index(3);  // up to 5
    const erq::WeightedGraph base = ref::random_connected(rng, n, rng.index(2));
    const int k = 1 + rng.index(3);
    std::vector<std::pair<int, int>> unknown;
    std::set<std::pair<int, int>> seen;
    for (int u = 0; u < n && static_cast<int>(unknown.size()) < k; ++u) {
      for (int v = u + 1; v < n && static_cast<int>(unknown.size()) < k; ++v) {
        if (rng.chance(0.4) && seen.insert({u, v}).second) unknown.push_back({u, v});
      }
    }
    if (unknown.empty()) unknown.push_back({0, 1});

    std::map<std::pair<int, int>, double> known;
    for (const auto& e : base.edges()) {
      const std::pair<int, int> p{e.u, e.v};
      if (std::find(unknown.begin(), unknown.end(), p) == unknown.end()) known[p] = e.w;
    }
    CHECK(erq::uniqueness_brute_force(n, known, unknown) == 1);
  }
}

TEST_CASE("log-determinant slope at an edge equals its pair resistance") {
  erq::Rng rng(173);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + rng.index(10);  // up to 12
    const erq::WeightedGraph g = ref::random_connected(rng, n, rng.index(n), 0.5, 2.0);
    const int i = rng.index(n);
    int j = rng.index(n - 1);
    if (j >= i) ++j;

    const double analytic = erq::logdet_directional_derivative(g, i, j);
    const double queried = erq::effective_resistance(g, i, j).value();
    CHECK(std::abs(analytic - queried) < 1e-7);

    const double fd = ref::fd_logdet_derivative(g, i, j, 1e-5);
    CHECK(std::abs(analytic - fd) < 1e-5);
    CHECK(std::abs(queried - fd) < 1e-5);
  }

  const erq::WeightedGraph g = erq::path_graph(4);
  CHECK_THROWS_AS(erq::logdet_directional_derivative(g, 0, 9), erq::BadParams);
  CHECK_THROWS_AS(erq::logdet_directional_derivative(g, 2, 2), erq::SameVertex);
  const erq::WeightedGraph split(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  CHECK_THROWS_AS(erq::logdet_directional_derivative(split, 0, 2), erq::Disconnected);
}

TEST_CASE("log-determinant is strictly concave along pair-Laplacian directions") {
  erq::Rng rng(179);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 4 + rng.index(8);
    const erq::WeightedGraph g = ref::random_connected(rng, n, rng.index(n), 0.5, 2.0);
    const Eigen::MatrixXd lap = ref::laplacian(g);

    // Random nonzero direction in the span of single-pair Laplacians.
    Eigen::MatrixXd dir = Eigen::MatrixXd::Zero(n, n);
    const int terms = 1 + rng.index(4);
    for (int t = 0; t < terms; ++t) {
      const int i = rng.index(n);
      int j = rng.index(n - 1);
      if (j >= i) ++j;
      const double c = rng.uniform(0.2, 1.0) * (rng.chance(0.5) ? 1.0 : -1.0);
      dir(i, i) += c;
      dir(j, j) += c;
      dir(i, j) -= c;
      dir(j, i) -= c;
    }

    const double h = 1e-3;  // small enough to stay inside the definite region
    const double f0 = ref::logdet_regularized(lap);
    const double fp = ref::logdet_regularized(lap + h * dir);
    const double fm = ref::logdet_regularized(lap - h * dir);
    const double second = (fp - 2.0 * f0 + fm) / (h * h);
    CHECK(second < -1e-8);
  }
}
