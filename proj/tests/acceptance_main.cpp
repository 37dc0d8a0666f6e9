// Acceptance gate for the query-oracle laboratory.  Each criterion below is
// self-contained, pins its tolerances in code, and prints exactly one
// [PASS]/[FAIL] line; the process exits nonzero if any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "erq/cut_analysis.hpp"
#include "erq/errors.hpp"
#include "erq/generators.hpp"
#include "erq/graph.hpp"
#include "erq/linalg.hpp"
#include "erq/oracle.hpp"
#include "erq/property_testing.hpp"
#include "erq/reconstruction.hpp"
#include "erq/rng.hpp"
#include "erq/separation.hpp"
#include "erq/tree_decomposition.hpp"
#include "erq/verify.hpp"
#include "support/reference.hpp"

namespace {

std::int64_t choose2(std::int64_t n) { return n * (n - 1) / 2; }

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

erq::OracleCapabilities ball_caps() {
  erq::OracleCapabilities c;
  c.sorted_ball = true;
  return c;
}

// ---------------------------------------------------------------------------
// 1. Exact query budgets, zero tolerance, on a randomized corpus (n <= 20).

bool criterion1(std::string& detail) {
  erq::Rng rng(1001);
  int checked = 0;
  int violations = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 3 + rng.index(18);  // 3..20

    {  // tree test: n-1, on trees and non-trees alike
      const erq::WeightedGraph g = rng.chance(0.5)
                                       ? ref::random_tree(rng, n)
                                       : ref::random_connected(rng, n, rng.index(n));
      erq::ErOracle o(g);
      erq::is_tree(o);
      ++checked;
      if (o.ledger().distinct != n - 1) ++violations;
    }
    {  // equality against a known graph: n-1
      const erq::WeightedGraph g = ref::random_connected(rng, n, rng.index(n), 0.5, 2.0);
      erq::ErOracle o(g);
      erq::equal_monotone(o, g);
      ++checked;
      if (o.ledger().distinct != n - 1) ++violations;
    }
    {  // cut-vertex, shared-bicomp, cut-edge: 2n-3 each
      const erq::WeightedGraph g = ref::random_connected(rng, n, rng.index(n));
      erq::ErOracle o1(g);
      erq::is_cut_vertex(o1, rng.index(n));
      ++checked;
      if (o1.ledger().distinct != 2 * n - 3) ++violations;

      erq::ErOracle o2(g);
      const int a = rng.index(n);
      int b = rng.index(n - 1);
      if (b >= a) ++b;
      erq::same_biconnected_component(o2, a, b);
      ++checked;
      if (o2.ledger().distinct != 2 * n - 3) ++violations;

      erq::ErOracle o3(g);
      const erq::Edge e = g.edges()[static_cast<std::size_t>(rng.index(g.edge_count()))];
      erq::is_cut_edge(o3, e.u, e.v);
      ++checked;
      if (o3.ledger().distinct != 2 * n - 3) ++violations;
    }
    {  // full reconstruction: C(n,2)
      const erq::WeightedGraph g = ref::random_connected(rng, n, rng.index(n), 0.5, 2.0);
      erq::ErOracle o(g);
      erq::reconstruct_full(o);
      ++checked;
      if (o.ledger().distinct != choose2(n)) ++violations;
    }
    {  // reduction onto a subset: C(|U|,2)
      const erq::WeightedGraph g = ref::random_connected(rng, n, rng.index(n), 0.5, 2.0);
      std::vector<int> pool(static_cast<std::size_t>(n));
      for (int v = 0; v < n; ++v) pool[static_cast<std::size_t>(v)] = v;
      rng.shuffle(pool);
      const int k = 2 + rng.index(n - 1);
      pool.resize(static_cast<std::size_t>(k));
      erq::ErOracle o(g);
      erq::reconstruct_schur(o, pool);
      ++checked;
      if (o.ledger().distinct != choose2(k)) ++violations;
    }
    {  // exhaustive completion: exactly k
      const std::vector<double> wset{1.0, 2.0};
      std::vector<erq::Edge> edges;
      for (int v = 1; v < n; ++v) {
        edges.push_back({rng.index(v), v, wset[static_cast<std::size_t>(rng.index(2))]});
      }
      const erq::WeightedGraph g(n, edges);
      erq::CompletionInstance inst;
      inst.n = n;
      inst.weight_set = wset;
      const int k = 1 + rng.index(std::min(4, n - 1));
      std::vector<erq::Edge> all = g.edges();
      rng.shuffle(all);
      std::set<std::pair<int, int>> unknown;
      for (int i = 0; i < k; ++i) unknown.insert({all[static_cast<std::size_t>(i)].u,
                                                  all[static_cast<std::size_t>(i)].v});
      for (const erq::Edge& e : g.edges()) {
        if (unknown.count({e.u, e.v})) {
          inst.unknown.emplace_back(e.u, e.v);
        } else {
          inst.known[{e.u, e.v}] = e.w;
        }
      }
      erq::ErOracle o(g);
      erq::complete_exhaustive(o, inst);
      ++checked;
      if (o.ledger().distinct != static_cast<std::int64_t>(inst.unknown.size()))
        ++violations;
    }
  }
  detail = std::to_string(checked) + " budgeted runs, " + std::to_string(violations) +
           " off-budget";
  return violations == 0;
}

// ---------------------------------------------------------------------------
// 2. Connectivity verdicts agree with a classical DFS analysis, 100%.

bool criterion2(std::string& detail) {
  erq::Rng rng(1002);
  int graphs = 0;
  int mismatches = 0;
  while (graphs < 200) {
    const int n = 3 + rng.index(12);  // 3..14
    const erq::WeightedGraph g = ref::random_connected(rng, n, rng.index(n));
    ++graphs;
    const erq::CutAnalysis dfs = erq::classical_cut_analysis(g);

    erq::ErOracle o1(g);
    const int v = rng.index(n);
    if (erq::is_cut_vertex(o1, v).answer != dfs.is_articulation(v)) ++mismatches;

    erq::ErOracle o2(g);
    const int a = rng.index(n);
    int b = rng.index(n - 1);
    if (b >= a) ++b;
    if (erq::same_biconnected_component(o2, a, b).answer != dfs.same_vertex_bicomp(a, b))
      ++mismatches;

    erq::ErOracle o3(g);
    const erq::Edge e = g.edges()[static_cast<std::size_t>(rng.index(g.edge_count()))];
    if (erq::is_cut_edge(o3, e.u, e.v).answer != dfs.is_bridge(e.u, e.v)) ++mismatches;
  }
  detail = std::to_string(graphs) + " graphs x 3 verdicts, " +
           std::to_string(mismatches) + " disagreements";
  return mismatches == 0;
}

// ---------------------------------------------------------------------------
// 3. Reconstruction: full recovery under 1e-6, and the decomposition-guided
//    variant stays within its bag budget and below the all-pairs cost.

bool criterion3(std::string& detail) {
  erq::Rng rng(1003);
  double max_err = 0.0;
  bool ok = true;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + rng.index(18);
    const erq::WeightedGraph g = ref::random_connected(rng, n, rng.index(2 * n), 0.5, 2.0);
    erq::ErOracle o(g);
    const erq::ReconstructionResult r = erq::reconstruct_full(o);
    const double err = erq::max_weight_error(g, r.graph);
    max_err = std::max(max_err, err);
    if (err >= 1e-6) ok = false;
  }

  int guided = 0;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const int n = 10 + static_cast<int>(seed % 6);  // 10..15
    const int k = 1 + static_cast<int>(seed % 3);   // widths 1..3
    const erq::Generated gen = erq::partial_ktree(n, k, 0.5, seed);
    erq::ErOracle o(gen.graph);
    const erq::ReconstructionResult r = erq::reconstruct_from_td(o, *gen.td);
    ++guided;
    if (erq::max_weight_error(gen.graph, r.graph) >= 1e-6) ok = false;
    if (r.queries_used.distinct > gen.td->bag_count() * choose2(gen.td->width() + 1))
      ok = false;
    if (r.queries_used.distinct >= choose2(n)) ok = false;
  }
  detail = "100 full recoveries (max error " + fmt(max_err) + "), " +
           std::to_string(guided) + " decomposition-guided runs on budget";
  return ok;
}

// ---------------------------------------------------------------------------
// 4. Exhaustive completion: 50 instances solved with exactly k queries, and
//    brute-force uniqueness holds on every small instance.

bool criterion4(std::string& detail) {
  erq::Rng rng(1004);
  int failures = 0;
  int unique_checked = 0;
  int unique_bad = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 4 + rng.index(7);  // 4..10
    const int set_size = 2 + (trial % 2);
    std::vector<double> wset{0.5, 1.0, 2.0};
    wset.resize(static_cast<std::size_t>(set_size));

    std::vector<erq::Edge> edges;
    for (int v = 1; v < n; ++v) {
      edges.push_back({rng.index(v), v,
                       wset[static_cast<std::size_t>(rng.index(set_size))]});
    }
    for (int extra = rng.index(3); extra > 0; --extra) {
      const int u = rng.index(n);
      int v = rng.index(n - 1);
      if (v >= u) ++v;
      edges.push_back({u, v, wset[static_cast<std::size_t>(rng.index(set_size))]});
    }
    const erq::WeightedGraph g(n, edges);

    std::vector<std::pair<int, int>> pool;
    for (const erq::Edge& e : g.edges()) {
      if (std::find(wset.begin(), wset.end(), e.w) != wset.end())
        pool.push_back({e.u, e.v});
    }
    if (pool.empty()) {
      ++failures;
      continue;
    }
    rng.shuffle(pool);
    const int k = 1 + rng.index(std::min<int>(6, static_cast<int>(pool.size())));
    pool.resize(static_cast<std::size_t>(k));

    erq::CompletionInstance inst;
    inst.n = n;
    inst.weight_set = wset;
    inst.unknown = pool;
    std::set<std::pair<int, int>> skip(pool.begin(), pool.end());
    for (const erq::Edge& e : g.edges()) {
      if (!skip.count({e.u, e.v})) inst.known[{e.u, e.v}] = e.w;
    }

    erq::ErOracle o(g);
    try {
      const erq::CompletionResult r = erq::complete_exhaustive(o, inst);
      if (o.ledger().distinct != k) ++failures;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (r.recovered[i] != g.weight(pool[i].first, pool[i].second)) {
          ++failures;
          break;
        }
      }
    } catch (const erq::Error&) {
      ++failures;
    }
  }

  // Presence/absence uniqueness on every instance with at most 5 vertices.
  erq::Rng rng2(1014);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + rng2.index(3);  // 3..5
    const erq::WeightedGraph base = ref::random_connected(rng2, n, rng2.index(3));
    std::vector<std::pair<int, int>> unknown;
    std::map<std::pair<int, int>, double> known;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng2.chance(0.5) && unknown.size() < 4) {
          unknown.push_back({u, v});
        } else if (base.has_edge(u, v)) {
          known[{u, v}] = 1.0;
        }
      }
    }
    if (unknown.empty()) unknown.push_back({0, 1});
    ++unique_checked;
    if (erq::uniqueness_brute_force(n, known, unknown) != 1) ++unique_bad;
  }
  detail = "50 instances (" + std::to_string(failures) + " failures), " +
           std::to_string(unique_checked) + " uniqueness checks (" +
           std::to_string(unique_bad) + " ambiguous)";
  return failures == 0 && unique_bad == 0;
}

// ---------------------------------------------------------------------------
// 5. The log-determinant derivative along a pair direction equals the queried
//    resistance (1e-7) and the central finite difference (1e-5).

bool criterion5(std::string& detail) {
  erq::Rng rng(1005);
  double worst_vs_query = 0.0;
  double worst_vs_fd = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + rng.index(10);  // 3..12
    const erq::WeightedGraph g = ref::random_connected(rng, n, rng.index(n), 0.5, 2.0);
    const int i = rng.index(n);
    int j = rng.index(n - 1);
    if (j >= i) ++j;
    const double analytic = erq::logdet_directional_derivative(g, i, j);
    erq::ErOracle o(g);
    const double queried = o.er_query(i, j).value();
    const double fd = ref::fd_logdet_derivative(g, i, j, 1e-5);
    worst_vs_query = std::max(worst_vs_query, std::abs(analytic - queried));
    worst_vs_fd = std::max(worst_vs_fd, std::abs(analytic - fd));
  }
  detail = "50 graphs, max |analytic - query| " + fmt(worst_vs_query) +
           ", max |analytic - fd| " + fmt(worst_vs_fd);
  return worst_vs_query < 1e-7 && worst_vs_fd < 1e-5;
}

// ---------------------------------------------------------------------------
// 6. The resistance matrix lifts back to the Laplacian pseudoinverse
//    entrywise within 1e-7.

bool criterion6(std::string& detail) {
  erq::Rng rng(1006);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + rng.index(12);
    const erq::WeightedGraph g = ref::random_connected(rng, n, rng.index(n), 0.5, 2.0);
    const Eigen::MatrixXd lifted =
        erq::er_to_laplacian_pinv(erq::all_pairs_er(g).finite_values());
    worst = std::max(worst, erq::max_abs_diff(lifted, erq::laplacian_bundle(g).pinv));
  }
  detail = "50 graphs, max entry deviation " + fmt(worst);
  return worst <= 1e-7;
}

// ---------------------------------------------------------------------------
// 7. Property testers: no false rejection on biconnected inputs over 20
//    consecutive seeds; rejection rate at least 2/3 - 0.15 on the star and
//    bridge-chain families over 40 seeds; budgets with explicit constants.

bool criterion7(std::string& detail) {
  bool ok = true;
  const double eps = 0.5;

  erq::Rng rng(1007);
  std::vector<erq::WeightedGraph> biconnected{erq::cycle_graph(12), erq::clique_graph(8)};
  for (int i = 0; i < 3; ++i) {
    biconnected.push_back(ref::random_biconnected(rng, 8 + 3 * i, 3 + i));
  }
  const std::int64_t s = static_cast<std::int64_t>(std::ceil(4.0 / eps));
  for (const erq::WeightedGraph& g : biconnected) {
    const std::int64_t n = g.vertex_count();
    const std::int64_t vbc_budget = (n - 1) + (s + 1) * (2 * n - 3);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      erq::ErOracle o(g);
      const erq::TestOutcome v = erq::test_vertex_biconnectivity(o, eps, seed);
      if (!v.accept || v.queries_used.distinct > vbc_budget) ok = false;
      erq::ErOracle o2(g, ball_caps());
      if (!erq::test_edge_biconnectivity(o2, eps, seed).accept) ok = false;
    }
  }

  int star_rejects = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    erq::ErOracle o(erq::star_graph(16));
    if (!erq::test_vertex_biconnectivity(o, eps, seed).accept) ++star_rejects;
  }

  int chain_rejects = 0;
  double max_constant = 0.0;
  const erq::WeightedGraph chain = erq::triangle_chain(6);
  const double scale = chain.vertex_count() / (eps * eps) + 1.0 / (eps * eps * eps * eps);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    erq::ErOracle o(chain, ball_caps());
    const erq::TestOutcome t = erq::test_edge_biconnectivity(o, eps, seed);
    if (!t.accept) ++chain_rejects;
    const double used =
        static_cast<double>(t.queries_used.distinct + t.queries_used.ball_items);
    max_constant = std::max(max_constant, used / scale);
  }

  const int needed = static_cast<int>(std::ceil(40.0 * (2.0 / 3.0 - 0.15)));
  if (star_rejects < needed || chain_rejects < needed) ok = false;
  if (max_constant > 64.0) ok = false;  // measured multiple of n/eps^2 + 1/eps^4
  detail = "star rejects " + std::to_string(star_rejects) + "/40, chain rejects " +
           std::to_string(chain_rejects) + "/40 (needed " + std::to_string(needed) +
           "), edge-test budget constant " + fmt(max_constant);
  return ok;
}

// ---------------------------------------------------------------------------
// 8. The two-star family: resistance-blind away from the special leaves,
//    unit resistance between the centers, hop distance 1 vs 2.

bool criterion8(std::string& detail) {
  bool ok = true;
  double worst = 0.0;
  for (int n : {8, 12}) {
    const erq::AdjacencyFamilyReport rep = erq::adjacency_family_report(n, 4, n);
    worst = std::max(worst, rep.max_agreeing_diff);
    if (!rep.er_indistinguishable || rep.max_agreeing_diff > 1e-9) ok = false;
    if (std::abs(rep.r_centers_g - 1.0) > 1e-9) ok = false;
    if (std::abs(rep.r_centers_h - 1.0) > 1e-9) ok = false;
    if (rep.sp_centers_g != 1 || rep.sp_centers_h != 2 || !rep.sp_distinguishes)
      ok = false;
  }
  detail = "n in {8,12}, max off-leaf deviation " + fmt(worst);
  return ok;
}

// ---------------------------------------------------------------------------
// 9. Structural invariants: metric axioms, edge-bump monotonicity, energy
//    duality, disjoint-cut lower bound, and the decomposition distance bound.

bool criterion9(std::string& detail) {
  erq::Rng rng(1009);
  bool ok = true;

  for (int trial = 0; trial < 10; ++trial) {  // metric axioms at 1e-8
    const int n = 4 + rng.index(10);
    const erq::WeightedGraph g = ref::random_connected(rng, n, rng.index(n), 0.5, 2.0);
    const erq::ErMatrix r = erq::all_pairs_er(g);
    for (int a = 0; a < n && ok; ++a) {
      for (int b = a + 1; b < n && ok; ++b) {
        if (r(a, b).value() <= 0) ok = false;
        for (int c = 0; c < n && ok; ++c) {
          if (c == a || c == b) continue;
          if (r(a, b).value() > r(a, c).value() + r(c, b).value() + 1e-8) ok = false;
        }
      }
    }
  }

  for (int trial = 0; trial < 10 && ok; ++trial) {  // raising a weight never raises R
    const int n = 4 + rng.index(8);
    erq::WeightedGraph g = ref::random_connected(rng, n, rng.index(n), 0.5, 2.0);
    std::vector<erq::Edge> edges = g.edges();
    erq::Edge& bump = edges[static_cast<std::size_t>(rng.index(g.edge_count()))];
    bump.w *= 1.0 + rng.uniform(0.1, 2.0);
    const erq::WeightedGraph g2(n, edges);
    const erq::ErMatrix before = erq::all_pairs_er(g);
    const erq::ErMatrix after = erq::all_pairs_er(g2);
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (after(a, b).value() > before(a, b).value() + 1e-10) ok = false;
      }
    }
  }

  for (int trial = 0; trial < 5 && ok; ++trial) {  // flow energy equals resistance
    const int n = 4 + rng.index(8);
    const erq::WeightedGraph g = ref::random_connected(rng, n, rng.index(n), 0.5, 2.0);
    const int s = rng.index(n);
    int t = rng.index(n - 1);
    if (t >= s) ++t;
    const erq::UnitFlow f = erq::electrical_flow(g, s, t);
    if (std::abs(f.energy - erq::effective_resistance(g, s, t).value()) > 1e-8) ok = false;
  }

  for (int trial = 0; trial < 5 && ok; ++trial) {  // disjoint-cut lower bound
    const int n = 6 + rng.index(8);
    const erq::WeightedGraph g = ref::random_tree(rng, n);
    const std::vector<int> hops = ref::bfs_hops(g, 0);
    const int far = static_cast<int>(std::max_element(hops.begin(), hops.end()) -
                                     hops.begin());
    if (hops[static_cast<std::size_t>(far)] < 2) continue;
    double bound = 0.0;
    for (int layer = 1; layer <= hops[static_cast<std::size_t>(far)]; ++layer) {
      double crossing = 0.0;
      for (const erq::Edge& e : g.edges()) {
        const int hu = hops[static_cast<std::size_t>(e.u)];
        const int hv = hops[static_cast<std::size_t>(e.v)];
        if (std::min(hu, hv) == layer - 1 && std::max(hu, hv) == layer) crossing += e.w;
      }
      if (crossing > 0) bound += 1.0 / crossing;
    }
    if (erq::effective_resistance(g, 0, far).value() < bound - 1e-10) ok = false;
  }

  {  // decomposition distance bound: r_T <= 4 * b_T * d_G * w_T
    const erq::Generated pkt = erq::partial_ktree(14, 2, 0.5, 9);
    const erq::TdDistanceReport a = erq::td_distance_bound_check(
        pkt.graph, *pkt.td, erq::max_bags_per_vertex(*pkt.td, 14), 40, 9);
    const erq::Generated cat = erq::caterpillar(16, 9);
    const erq::TdDistanceReport b = erq::td_distance_bound_check(
        cat.graph, *cat.td, erq::max_bags_per_vertex(*cat.td, 16), 40, 10);
    if (!a.holds || !b.holds) ok = false;
    detail = "metric/monotonicity/energy/cut checks done; distance ratios " +
             fmt(a.max_ratio) + " and " + fmt(b.max_ratio) + " vs bounds " +
             fmt(a.bound) + " and " + fmt(b.bound);
  }
  return ok;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* what;
    bool (*run)(std::string&);
  };
  const Criterion criteria[] = {
      {1, "query budgets are exact", criterion1},
      {2, "connectivity verdicts match the classical analysis", criterion2},
      {3, "reconstruction is correct and on budget", criterion3},
      {4, "exhaustive completion solves with k queries, uniquely", criterion4},
      {5, "log-det derivative equals the queried resistance", criterion5},
      {6, "resistances lift back to the pseudoinverse", criterion6},
      {7, "testers accept biconnected inputs and reject the witness families",
       criterion7},
      {8, "resistance-blind family is shortest-path-visible", criterion8},
      {9, "structural invariants hold", criterion9},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    std::string detail;
    bool pass = false;
    try {
      pass = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!pass) ++failures;
    std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", c.id, c.what,
                detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
