#include "erq/property_testing.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "erq/errors.hpp"
#include "erq/linalg.hpp"
#include "erq/reconstruction.hpp"
#include "erq/verify.hpp"

namespace erq {
namespace {

void check_eps(double eps, const char* op) {
  if (!(eps > 0.0) || eps > 1.0) {
    throw BadParams(std::string(op) + ": eps must lie in (0, 1]");
  }
}

int ceil_of(double x) { return static_cast<int>(std::ceil(x)); }

}  // namespace

const char* to_string(TestReason reason) {
  switch (reason) {
    case TestReason::NoEvidence: return "NoEvidence";
    case TestReason::CutVertexFound: return "CutVertexFound";
    case TestReason::CutEdgeFound: return "CutEdgeFound";
    case TestReason::SmallLowDegreeComponent: return "SmallLowDegreeComponent";
    case TestReason::DifferentBiconnectedComponent: return "DifferentBiconnectedComponent";
    case TestReason::Disconnected: return "Disconnected";
  }
  return "NoEvidence";
}

std::vector<BallEntry> unit_ball(ErOracleBase& o, int v, double ball_tol) {
  const int n = o.vertex_count();
  if (v < 0 || v >= n) throw BadParams("unit_ball: vertex out of range");
  const double radius = 1.0 + ball_tol;
  std::vector<BallEntry> out;
  if (o.capabilities().sorted_ball) {
    // Stream ranks outward and stop one past the radius, so the cost in ball
    // items is |ball| (capped at n-1 when everything is close).
    for (int rank = 0; rank < n - 1; ++rank) {
      auto [u, r] = o.ball_item(v, rank);
      if (r.is_infinite() || r.value() > radius) break;
      out.push_back({u, r.value()});
    }
  } else {
    for (int u = 0; u < n; ++u) {
      if (u == v) continue;
      Resistance r = o.er_query(v, u);
      if (!r.is_infinite() && r.value() <= radius) out.push_back({u, r.value()});
    }
    std::sort(out.begin(), out.end(), [](const BallEntry& a, const BallEntry& b) {
      if (a.resistance != b.resistance) return a.resistance < b.resistance;
      return a.vertex < b.vertex;
    });
  }
  return out;
}

ErDensity er_density(const WeightedGraph& g, double ball_tol) {
  const int n = g.vertex_count();
  ErDensity out;
  if (n == 0) return out;
  out.rho = 1;
  out.argmax = 0;
  if (n == 1) return out;
  ErMatrix r = all_pairs_er(g);
  const double radius = 1.0 + ball_tol;
  for (int v = 0; v < n; ++v) {
    int size = 1;  // the center itself
    for (int u = 0; u < n; ++u) {
      if (u == v) continue;
      Resistance d = r(v, u);
      if (!d.is_infinite() && d.value() <= radius) ++size;
    }
    if (size > out.rho) {
      out.rho = size;
      out.argmax = v;
    }
  }
  return out;
}

TestOutcome test_vertex_biconnectivity(ErOracleBase& o, double eps, std::uint64_t seed) {
  check_eps(eps, "test_vertex_biconnectivity");
  const int n = o.vertex_count();
  QueryLedger before = o.ledger();
  TestOutcome out;

  // Connectivity pre-check from vertex 0; a disconnected graph is maximally
  // far from biconnectivity and gives a certified rejection.
  for (int u = 1; u < n; ++u) {
    if (o.er_query(0, u).is_infinite()) {
      out.accept = false;
      out.reason = TestReason::Disconnected;
      out.witness_vertex = u;
      out.note = "vertex unreachable from vertex 0";
      out.queries_used = o.ledger() - before;
      return out;
    }
  }

  if (n >= 3) {
    Verdict anchor = is_cut_vertex(o, 0);
    if (anchor.answer) {
      out.accept = false;
      out.reason = TestReason::CutVertexFound;
      out.witness_vertex = 0;
      out.note = "anchor vertex 0 is a cut vertex";
    } else {
      const int samples = ceil_of(4.0 / eps);
      Rng rng(seed);
      for (int t = 0; t < samples; ++t) {
        int v = rng.index(n);
        ++out.samples_used;
        if (v == 0) continue;  // trivially in the anchor's own block
        Verdict same = same_biconnected_component(o, 0, v);
        if (!same.answer) {
          out.accept = false;
          out.reason = TestReason::DifferentBiconnectedComponent;
          out.witness_vertex = v;
          if (same.witness) {
            out.note = "separated from vertex 0 by vertex " + std::to_string(*same.witness);
          }
          break;
        }
      }
    }
  }
  out.queries_used = o.ledger() - before;
  return out;
}

TestOutcome test_edge_biconnectivity(ErOracleBase& o, double eps, std::uint64_t seed,
                                     double ball_tol) {
  check_eps(eps, "test_edge_biconnectivity");
  const int n = o.vertex_count();
  QueryLedger before = o.ledger();
  TestOutcome out;
  const int roots = ceil_of(16.0 / eps);
  const int visit_limit = ceil_of(4.0 / eps);
  const int ball_limit = visit_limit + 2;  // closed-ball size before we abandon
  const double bridge_tol = 1e-9;          // R = 1 exactly marks a bridge (unweighted)

  NeighborhoodCache neighborhoods(o, ball_tol);
  std::map<int, std::vector<BallEntry>> balls;
  auto ball_of = [&](int v) -> const std::vector<BallEntry>& {
    auto it = balls.find(v);
    if (it == balls.end()) it = balls.emplace(v, unit_ball(o, v, ball_tol)).first;
    return it->second;
  };

  Rng rng(seed);
  for (int t = 0; t < roots && out.accept; ++t) {
    int root = rng.index(n);
    ++out.samples_used;
    std::set<int> explored;
    std::deque<int> frontier{root};
    bool abandoned = false;
    while (!frontier.empty() && out.accept) {
      int u = frontier.front();
      frontier.pop_front();
      if (explored.count(u)) continue;
      if (static_cast<int>(explored.size()) >= visit_limit) {
        abandoned = true;  // ball-limited search: enough vertices seen here
        break;
      }
      explored.insert(u);
      const std::vector<BallEntry>& ball = ball_of(u);
      if (1 + static_cast<int>(ball.size()) > ball_limit) {
        abandoned = true;  // dense neighborhood; this root cannot be a small piece
        break;
      }
      std::map<int, double> radius;
      for (const BallEntry& b : ball) radius.emplace(b.vertex, b.resistance);
      for (const auto& [x, w] : neighborhoods.neighbors(u)) {
        auto it = radius.find(x);
        double r = it != radius.end() ? it->second : o.er_query(u, x).value();
        if (std::abs(r - 1.0) <= bridge_tol) {
          out.accept = false;
          out.reason = TestReason::CutEdgeFound;
          out.witness_edge = std::make_pair(std::min(u, x), std::max(u, x));
          break;
        }
        if (!explored.count(x)) frontier.push_back(x);
      }
    }
    if (out.accept && !abandoned && static_cast<int>(explored.size()) < n) {
      // The search exhausted a whole component smaller than the graph.
      out.accept = false;
      out.reason = TestReason::SmallLowDegreeComponent;
      out.witness_vertex = root;
      out.note = "component of size " + std::to_string(explored.size()) +
                 " found around vertex " + std::to_string(root);
    }
  }
  out.queries_used = o.ledger() - before;
  return out;
}

BoundedDegreeTester::BoundedDegreeTester(int degree_bound, double eps)
    : degree_bound_(degree_bound), eps_(eps) {
  if (degree_bound < 1) throw BadParams("bounded-degree tester: degree bound must be >= 1");
  check_eps(eps, "bounded-degree tester");
}

TriangleFreenessTester::TriangleFreenessTester(int degree_bound, double eps)
    : BoundedDegreeTester(degree_bound, eps) {}

BoundedDegreeTester::RunResult TriangleFreenessTester::run(int n, const DegreeCallbacks& cb,
                                                           Rng& rng) const {
  const int samples = static_cast<int>(std::ceil(2.0 / epsilon()));
  for (int t = 0; t < samples; ++t) {
    int v = rng.index(n);
    const int dv = cb.degree(v);
    std::vector<int> around;
    for (int i = 0; i < dv; ++i) {
      if (std::optional<int> u = cb.neighbor(v, i)) around.push_back(*u);
    }
    std::set<int> around_set(around.begin(), around.end());
    for (int u : around) {
      const int du = cb.degree(u);
      for (int i = 0; i < du; ++i) {
        std::optional<int> w = cb.neighbor(u, i);
        if (w && *w != v && around_set.count(*w)) return {false, {v, u, *w}};
      }
    }
  }
  return {true, {}};
}

AdapterReport adapt_bounded_degree_tester(ErOracleBase& o, const BoundedDegreeTester& tester,
                                          std::uint64_t seed) {
  AdapterReport rep;
  QueryLedger before = o.ledger();
  NeighborhoodCache cache(o);
  const int bound = tester.degree_bound();

  auto checked_neighbors = [&](int v) -> const std::vector<std::pair<int, double>>& {
    const auto& nbrs = cache.neighbors(v);
    if (static_cast<int>(nbrs.size()) > bound) {
      throw DegreeBoundExceeded("adapter: vertex " + std::to_string(v) + " has " +
                                std::to_string(nbrs.size()) + " neighbors, bound is " +
                                std::to_string(bound));
    }
    return nbrs;
  };

  DegreeCallbacks cb;
  cb.degree = [&](int v) {
    ++rep.degree_calls;
    return static_cast<int>(checked_neighbors(v).size());
  };
  cb.neighbor = [&](int v, int i) -> std::optional<int> {
    ++rep.neighbor_calls;
    if (i < 0) throw BadParams("adapter: negative neighbor index");
    const auto& nbrs = checked_neighbors(v);
    if (i >= static_cast<int>(nbrs.size())) return std::nullopt;
    return nbrs[static_cast<std::size_t>(i)].first;
  };

  Rng rng(seed);
  BoundedDegreeTester::RunResult rr = tester.run(o.vertex_count(), cb, rng);
  rep.callbacks = rep.degree_calls + rep.neighbor_calls;
  rep.outcome.accept = rr.accept;
  rep.outcome.reason = TestReason::NoEvidence;
  rep.outcome.witness_vertices = rr.witness;
  if (!rr.accept) rep.outcome.note = "plugged-in tester rejected";
  rep.outcome.queries_used = o.ledger() - before;
  return rep;
}

TdDistanceReport td_distance_bound_check(const WeightedGraph& g, const TreeDecomposition& td,
                                         int b_t, int samples, std::uint64_t seed) {
  if (!g.is_unweighted()) {
    throw WeightedInput("td_distance_bound_check: stated for unweighted graphs");
  }
  TdCheck check = validate_tree_decomposition(g, td);
  if (!check.valid) throw InvalidDecomposition("td_distance_bound_check: " + check.violation);
  const int n = g.vertex_count();
  int actual = max_bags_per_vertex(td, n);
  if (b_t < actual) {
    throw BadParams("td_distance_bound_check: a vertex appears in " + std::to_string(actual) +
                    " bags, above the declared bound " + std::to_string(b_t));
  }
  if (samples < 1) throw BadParams("td_distance_bound_check: need at least one sample");

  TdDistanceReport rep;
  rep.b_t = b_t;
  rep.width = td.width();
  for (int v = 0; v < n; ++v) rep.max_degree = std::max(rep.max_degree, g.degree_count(v));
  rep.bound = 4.0 * b_t * rep.max_degree * rep.width;
  if (n < 2) return rep;

  std::vector<std::vector<int>> bags_of(n);
  for (int b = 0; b < td.bag_count(); ++b) {
    for (int v : td.bags[b]) bags_of[v].push_back(b);
  }
  std::vector<std::vector<int>> hops = bag_hop_distances(td);
  LaplacianBundle bundle = laplacian_bundle(g);

  Rng rng(seed);
  for (int t = 0; t < samples; ++t) {
    int u = rng.index(n);
    int v = rng.index(n);
    if (u == v) continue;
    Resistance r = effective_resistance(g, bundle, u, v);
    if (r.is_infinite()) continue;
    int tree_dist = td.bag_count();
    for (int bu : bags_of[u]) {
      for (int bv : bags_of[v]) tree_dist = std::min(tree_dist, hops[bu][bv]);
    }
    rep.max_ratio = std::max(rep.max_ratio, tree_dist / r.value());
    ++rep.pairs_checked;
  }
  rep.holds = rep.max_ratio <= rep.bound + 1e-9;
  return rep;
}

}  // namespace erq
