#include "erq/reconstruction.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "erq/errors.hpp"
#include "erq/linalg.hpp"
#include "erq/property_testing.hpp"

namespace erq {
namespace {

std::string pair_text(int u, int v) {
  return "(" + std::to_string(u) + ", " + std::to_string(v) + ")";
}

// Queries every pair inside `ids` (sorted, global vertex ids) and returns the
// resistance matrix in local order.  Throws Disconnected if any pair is
// infinite: reductions are only defined per connected piece here.
Eigen::MatrixXd query_pair_matrix(ErOracleBase& o, const std::vector<int>& ids,
                                  const char* op) {
  const int m = static_cast<int>(ids.size());
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      Resistance res = o.er_query(ids[i], ids[j]);
      if (res.is_infinite()) {
        throw Disconnected(std::string(op) + ": vertices " + pair_text(ids[i], ids[j]) +
                           " are in different components");
      }
      r(i, j) = r(j, i) = res.value();
    }
  }
  return r;
}

Eigen::MatrixXd laplacian_from_resistances(const Eigen::MatrixXd& r) {
  return pinv_to_laplacian(er_to_laplacian_pinv(r));
}

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& a) {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  return cod.pseudoInverse();
}

}  // namespace

ReconstructionResult reconstruct_full(ErOracleBase& o, double floor_scale) {
  const int n = o.vertex_count();
  QueryLedger before = o.ledger();
  ReconstructionResult out{WeightedGraph(n, {}), {}, std::nullopt};
  if (n >= 2) {
    // Query all pairs unconditionally; components are split afterwards so a
    // disconnected hidden graph still costs exactly C(n,2).
    std::vector<std::vector<Resistance>> r(n, std::vector<Resistance>(n, Resistance::finite(0.0)));
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) r[i][j] = r[j][i] = o.er_query(i, j);
    }
    // Union vertices with finite mutual resistance into components.
    std::vector<int> comp(n, -1);
    int comp_count = 0;
    for (int i = 0; i < n; ++i) {
      if (comp[i] >= 0) continue;
      comp[i] = comp_count;
      for (int j = i + 1; j < n; ++j) {
        if (comp[j] < 0 && !r[i][j].is_infinite()) comp[j] = comp_count;
      }
      ++comp_count;
    }
    std::vector<Edge> edges;
    for (int c = 0; c < comp_count; ++c) {
      std::vector<int> ids;
      for (int v = 0; v < n; ++v) {
        if (comp[v] == c) ids.push_back(v);
      }
      const int m = static_cast<int>(ids.size());
      if (m < 2) continue;
      Eigen::MatrixXd rc(m, m);
      for (int i = 0; i < m; ++i) {
        rc(i, i) = 0.0;
        for (int j = i + 1; j < m; ++j) rc(i, j) = rc(j, i) = r[ids[i]][ids[j]].value();
      }
      WeightedGraph piece = laplacian_to_graph(laplacian_from_resistances(rc), floor_scale);
      for (const Edge& e : piece.edges()) edges.push_back({ids[e.u], ids[e.v], e.w});
    }
    out.graph = WeightedGraph(n, edges);
  }
  out.queries_used = o.ledger() - before;
  return out;
}

SchurReconstruction reconstruct_schur(ErOracleBase& o, std::vector<int> keep,
                                      double floor_scale) {
  const int n = o.vertex_count();
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.empty()) throw BadParams("reconstruct_schur: empty keep set");
  if (keep.front() < 0 || keep.back() >= n) {
    throw BadParams("reconstruct_schur: keep set out of range");
  }
  QueryLedger before = o.ledger();
  Eigen::MatrixXd r = query_pair_matrix(o, keep, "reconstruct_schur");
  WeightedGraph g = laplacian_to_graph(laplacian_from_resistances(r), floor_scale);
  return {std::move(g), std::move(keep), o.ledger() - before};
}

std::vector<std::pair<int, double>> discover_neighbors(ErOracleBase& o, int v,
                                                       double ball_tol,
                                                       double floor_scale) {
  const int n = o.vertex_count();
  if (v < 0 || v >= n) throw BadParams("discover_neighbors: vertex out of range");
  std::vector<BallEntry> ball = unit_ball(o, v, ball_tol);
  std::vector<int> ids;
  ids.reserve(ball.size() + 1);
  ids.push_back(v);
  for (const BallEntry& b : ball) ids.push_back(b.vertex);
  std::sort(ids.begin(), ids.end());
  // The reduction onto the closed unit ball keeps v's row intact: any
  // neighbor of v is at resistance <= 1, hence inside the ball.
  Eigen::MatrixXd r = query_pair_matrix(o, ids, "discover_neighbors");
  WeightedGraph local = laplacian_to_graph(laplacian_from_resistances(r), floor_scale);
  int pos = static_cast<int>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
  std::vector<std::pair<int, double>> out;
  for (const auto& [u, w] : local.neighbors(pos)) out.emplace_back(ids[u], w);
  return out;
}

NeighborhoodCache::NeighborhoodCache(ErOracleBase& o, double ball_tol)
    : oracle_(o), ball_tol_(ball_tol) {}

const std::vector<std::pair<int, double>>& NeighborhoodCache::neighbors(int v) {
  auto it = cache_.find(v);
  if (it == cache_.end()) {
    it = cache_.emplace(v, discover_neighbors(oracle_, v, ball_tol_)).first;
  }
  return it->second;
}

ReconstructionResult reconstruct_from_td(ErOracleBase& o, const TreeDecomposition& td,
                                         double floor_scale) {
  const int n = o.vertex_count();
  TdCheck structure = validate_td_structure(td, n);
  if (!structure.valid) {
    throw InvalidDecomposition("reconstruct_from_td: " + structure.violation);
  }
  QueryLedger before = o.ledger();
  TreeDecomposition work = drop_empty_leaf_bags(td);
  const int nbags = work.bag_count();

  std::vector<std::vector<int>> adj(nbags);
  for (auto [a, b] : work.tree_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> active(nbags, 1);
  std::vector<int> active_degree(nbags);
  for (int b = 0; b < nbags; ++b) active_degree[b] = static_cast<int>(adj[b].size());

  struct Step {
    std::vector<int> bag;   // sorted global ids
    std::vector<int> elim;  // the vertices this step removed (subset of bag)
    Eigen::MatrixXd lap;    // reduction of the hidden graph onto bag
  };
  std::vector<Step> steps;

  int remaining = nbags;
  while (remaining > 1) {
    int leaf = -1;
    for (int b = 0; b < nbags; ++b) {
      if (active[b] && active_degree[b] <= 1) {
        leaf = b;
        break;
      }
    }
    int parent = -1;
    for (int y : adj[leaf]) {
      if (active[y]) {
        parent = y;
        break;
      }
    }
    const std::vector<int>& bag = work.bags[leaf];
    const std::vector<int>& pbag = work.bags[parent];
    std::vector<int> elim;
    for (int v : bag) {
      if (!std::binary_search(pbag.begin(), pbag.end(), v)) elim.push_back(v);
    }
    if (!elim.empty()) {
      // Contiguity confines `elim` to this bag, so its rows in the reduction
      // onto the bag match the hidden Laplacian and can be peeled off.
      Eigen::MatrixXd r = query_pair_matrix(o, bag, "reconstruct_from_td");
      steps.push_back({bag, std::move(elim), laplacian_from_resistances(r)});
    }
    active[leaf] = 0;
    --remaining;
    for (int y : adj[leaf]) {
      if (active[y]) --active_degree[y];
    }
  }

  int root = -1;
  for (int b = 0; b < nbags; ++b) {
    if (active[b]) root = b;
  }
  std::vector<int> vertices = work.bags[root];  // the not-yet-eliminated vertices
  Eigen::MatrixXd lap =
      laplacian_from_resistances(query_pair_matrix(o, vertices, "reconstruct_from_td"));

  // Reverse recombination: re-attach each eliminated block.  With
  // A = lap[elim, elim] and B = lap[elim, rest], undoing the reduction adds
  // B^T A^+ B back onto the rest-block and restores the elim rows verbatim.
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    const Step& st = *it;
    std::vector<int> rest;
    for (int v : st.bag) {
      if (!std::binary_search(st.elim.begin(), st.elim.end(), v)) rest.push_back(v);
    }
    const int ne = static_cast<int>(st.elim.size());
    const int nr = static_cast<int>(rest.size());
    auto bag_pos = [&](int v) {
      return static_cast<int>(std::lower_bound(st.bag.begin(), st.bag.end(), v) -
                              st.bag.begin());
    };
    Eigen::MatrixXd a(ne, ne);
    Eigen::MatrixXd b(ne, nr);
    for (int i = 0; i < ne; ++i) {
      for (int j = 0; j < ne; ++j) a(i, j) = st.lap(bag_pos(st.elim[i]), bag_pos(st.elim[j]));
      for (int j = 0; j < nr; ++j) b(i, j) = st.lap(bag_pos(st.elim[i]), bag_pos(rest[j]));
    }
    Eigen::MatrixXd correction = b.transpose() * pseudo_inverse(a) * b;

    std::vector<int> merged(vertices.size() + st.elim.size());
    std::merge(vertices.begin(), vertices.end(), st.elim.begin(), st.elim.end(),
               merged.begin());
    auto merged_pos = [&](int v) {
      return static_cast<int>(std::lower_bound(merged.begin(), merged.end(), v) -
                              merged.begin());
    };
    const int nm = static_cast<int>(merged.size());
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(nm, nm);
    for (int i = 0; i < static_cast<int>(vertices.size()); ++i) {
      for (int j = 0; j < static_cast<int>(vertices.size()); ++j) {
        next(merged_pos(vertices[i]), merged_pos(vertices[j])) = lap(i, j);
      }
    }
    for (int i = 0; i < nr; ++i) {
      for (int j = 0; j < nr; ++j) {
        next(merged_pos(rest[i]), merged_pos(rest[j])) += correction(i, j);
      }
    }
    for (int i = 0; i < ne; ++i) {
      const int pi = merged_pos(st.elim[i]);
      for (int j = 0; j < ne; ++j) next(pi, merged_pos(st.elim[j])) = a(i, j);
      for (int j = 0; j < nr; ++j) {
        next(pi, merged_pos(rest[j])) = b(i, j);
        next(merged_pos(rest[j]), pi) = b(i, j);
      }
    }
    vertices = std::move(merged);
    lap = std::move(next);
  }

  ReconstructionResult out{WeightedGraph(n, {}), {}, std::nullopt};
  if (static_cast<int>(vertices.size()) == n) {
    out.graph = laplacian_to_graph(lap, floor_scale);
  } else {
    // Vertices outside every bag were rejected by the structure check, so
    // this cannot happen; keep a defensive mapping anyway.
    std::vector<Edge> edges;
    WeightedGraph local = laplacian_to_graph(lap, floor_scale);
    for (const Edge& e : local.edges()) edges.push_back({vertices[e.u], vertices[e.v], e.w});
    out.graph = WeightedGraph(n, edges);
  }
  out.queries_used = o.ledger() - before;

  TdCheck post = validate_tree_decomposition(out.graph, td);
  if (!post.valid) {
    throw InvalidDecomposition(
        "reconstruct_from_td: recovered graph violates the decomposition: " + post.violation);
  }
  return out;
}

void CompletionInstance::validate() const {
  if (n < 2) throw BadParams("completion: need at least two vertices");
  std::set<std::pair<int, int>> seen;
  auto check_pair = [&](std::pair<int, int> p, const char* which) {
    if (p.first == p.second) {
      throw BadParams(std::string("completion: ") + which + " pair " +
                      pair_text(p.first, p.second) + " is a self-loop");
    }
    if (p.first < 0 || p.second < 0 || p.first >= n || p.second >= n) {
      throw BadParams(std::string("completion: ") + which + " pair " +
                      pair_text(p.first, p.second) + " out of range");
    }
  };
  for (const auto& [p, w] : known) {
    check_pair(p, "known");
    if (p.first > p.second) throw BadParams("completion: known pairs must be (low, high)");
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw BadParams("completion: known weight for " + pair_text(p.first, p.second) +
                      " must be finite and nonnegative");
    }
    seen.insert(p);
  }
  for (auto [u, v] : unknown) {
    std::pair<int, int> p{std::min(u, v), std::max(u, v)};
    check_pair(p, "unknown");
    if (!seen.insert(p).second) {
      throw BadParams("completion: pair " + pair_text(p.first, p.second) +
                      " listed twice or marked both known and unknown");
    }
  }
}

WeightedGraph CompletionInstance::known_graph() const {
  std::vector<Edge> edges;
  for (const auto& [p, w] : known) {
    if (w > 0.0) edges.push_back({p.first, p.second, w});
  }
  return WeightedGraph(n, edges);
}

CompletionResult complete_quadratic(ErOracleBase& o, const CompletionInstance& inst,
                                    Tolerance tol, double floor_scale) {
  inst.validate();
  if (o.vertex_count() != inst.n) {
    throw BadParams("complete_quadratic: oracle and instance disagree on vertex count");
  }
  const int n = inst.n;
  QueryLedger before = o.ledger();

  std::set<int> uset;
  for (auto [u, v] : inst.unknown) {
    uset.insert(u);
    uset.insert(v);
  }
  std::vector<int> u_ids(uset.begin(), uset.end());
  const int m = static_cast<int>(u_ids.size());
  auto u_pos = [&](int v) {
    return static_cast<int>(std::lower_bound(u_ids.begin(), u_ids.end(), v) - u_ids.begin());
  };

  CompletionResult out{WeightedGraph(n, {}), {}, {}, 0, 0};
  Eigen::MatrixXd recovered_uu;
  double floor_eff = 0.0;
  if (m > 0) {
    Eigen::MatrixXd r = query_pair_matrix(o, u_ids, "complete_quadratic");
    Eigen::MatrixXd reduced = laplacian_from_resistances(r);

    // Undo the reduction using the known blocks: everything outside the
    // unknown pairs is known, so L[U, rest], L[rest, rest] come for free.
    Eigen::MatrixXd full = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [p, w] : inst.known) {
      full(p.first, p.second) -= w;
      full(p.second, p.first) -= w;
      full(p.first, p.first) += w;
      full(p.second, p.second) += w;
    }
    std::vector<int> rest;
    for (int v = 0; v < n; ++v) {
      if (!uset.count(v)) rest.push_back(v);
    }
    const int nr = static_cast<int>(rest.size());
    Eigen::MatrixXd l_ur(m, nr);
    Eigen::MatrixXd l_rr(nr, nr);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < nr; ++j) l_ur(i, j) = full(u_ids[i], rest[j]);
    }
    for (int i = 0; i < nr; ++i) {
      for (int j = 0; j < nr; ++j) l_rr(i, j) = full(rest[i], rest[j]);
    }
    recovered_uu = reduced;
    if (nr > 0) recovered_uu += l_ur * pseudo_inverse(l_rr) * l_ur.transpose();
    floor_eff = floor_scale * recovered_uu.diagonal().cwiseAbs().maxCoeff();

    // Known pairs inside U are re-derived too; they must agree.
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        std::pair<int, int> p{u_ids[i], u_ids[j]};
        auto it = inst.known.find(p);
        if (it == inst.known.end()) continue;
        double w = -0.5 * (recovered_uu(i, j) + recovered_uu(j, i));
        bool ok = it->second == 0.0 ? std::abs(w) <= std::max(floor_eff, tol.abs)
                                    : tol.close(w, it->second);
        if (!ok) {
          throw InconsistentKnownPart("complete_quadratic: recovered weight " +
                                      std::to_string(w) + " for known pair " +
                                      pair_text(p.first, p.second) + " disagrees with " +
                                      std::to_string(it->second));
        }
      }
    }
  }

  std::vector<Edge> edges;
  for (const auto& [p, w] : inst.known) {
    if (w > 0.0) edges.push_back({p.first, p.second, w});
  }
  for (auto [u, v] : inst.unknown) {
    int a = std::min(u, v), b = std::max(u, v);
    double w = -0.5 * (recovered_uu(u_pos(a), u_pos(b)) + recovered_uu(u_pos(b), u_pos(a)));
    if (w <= floor_eff) w = 0.0;
    out.recovered.push_back(w);
    if (w > 0.0) edges.push_back({a, b, w});
  }
  out.graph = WeightedGraph(n, edges);
  out.queries_used = o.ledger() - before;
  return out;
}

CompletionResult complete_exhaustive(ErOracleBase& o, const CompletionInstance& inst,
                                     double rel_tol) {
  inst.validate();
  if (o.vertex_count() != inst.n) {
    throw BadParams("complete_exhaustive: oracle and instance disagree on vertex count");
  }
  if (inst.weight_set.empty()) {
    throw BadParams("complete_exhaustive: empty candidate weight set");
  }
  std::vector<double> weights = inst.weight_set;
  std::sort(weights.begin(), weights.end());
  weights.erase(std::unique(weights.begin(), weights.end()), weights.end());
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw BadParams("complete_exhaustive: candidate weights must be finite and nonnegative");
    }
  }
  const int n = inst.n;
  const int k = static_cast<int>(inst.unknown.size());
  QueryLedger before = o.ledger();

  std::vector<Resistance> observed;
  observed.reserve(k);
  for (auto [u, v] : inst.unknown) observed.push_back(o.er_query(u, v));

  std::vector<Edge> base_edges;
  for (const auto& [p, w] : inst.known) {
    if (w > 0.0) base_edges.push_back({p.first, p.second, w});
  }

  auto close_rel = [rel_tol](double a, double b) {
    return std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b));
  };

  CompletionResult out{WeightedGraph(n, {}), {}, {}, 0, 0};
  std::vector<std::vector<std::size_t>> hits;
  std::vector<std::size_t> assign(static_cast<std::size_t>(k), 0);
  const std::size_t s = weights.size();
  bool done = false;
  while (!done) {
    ++out.candidates_total;
    std::vector<Edge> edges = base_edges;
    for (int i = 0; i < k; ++i) {
      double w = weights[assign[i]];
      if (w > 0.0) {
        edges.push_back({std::min(inst.unknown[i].first, inst.unknown[i].second),
                         std::max(inst.unknown[i].first, inst.unknown[i].second), w});
      }
    }
    WeightedGraph cand(n, edges);
    if (cand.is_connected()) {
      ++out.candidates_evaluated;
      LaplacianBundle bundle = laplacian_bundle(cand);
      bool all_match = true;
      for (int i = 0; i < k && all_match; ++i) {
        if (observed[i].is_infinite()) {
          all_match = false;  // a connected candidate never answers infinite
          break;
        }
        Resistance r = effective_resistance(cand, bundle, inst.unknown[i].first,
                                            inst.unknown[i].second);
        all_match = close_rel(r.value(), observed[i].value());
      }
      if (all_match && hits.size() < 2) hits.push_back(assign);
    }
    // Advance the odometer; the last coordinate moves fastest so assignments
    // come out in lexicographic order over the sorted weight set.
    done = true;
    for (int i = k - 1; i >= 0; --i) {
      if (++assign[i] < s) {
        done = false;
        break;
      }
      assign[i] = 0;
    }
  }

  auto describe = [&](const std::vector<std::size_t>& a) {
    std::string text = "{";
    for (int i = 0; i < k; ++i) {
      if (i) text += ", ";
      text += pair_text(inst.unknown[i].first, inst.unknown[i].second) + "=" +
              std::to_string(weights[a[i]]);
    }
    return text + "}";
  };
  if (hits.empty()) {
    throw NoConsistentCompletion(
        "complete_exhaustive: no candidate assignment reproduces the observed resistances");
  }
  if (hits.size() > 1) {
    throw AmbiguousCompletion("complete_exhaustive: at least two assignments match: " +
                              describe(hits[0]) + " and " + describe(hits[1]));
  }

  std::vector<Edge> edges = base_edges;
  for (int i = 0; i < k; ++i) {
    double w = weights[hits[0][i]];
    out.recovered.push_back(w);
    if (w > 0.0) {
      edges.push_back({std::min(inst.unknown[i].first, inst.unknown[i].second),
                       std::max(inst.unknown[i].first, inst.unknown[i].second), w});
    }
  }
  out.graph = WeightedGraph(n, edges);
  out.queries_used = o.ledger() - before;
  return out;
}

double logdet_directional_derivative(const WeightedGraph& g, int i, int j) {
  const int n = g.vertex_count();
  if (i < 0 || j < 0 || i >= n || j >= n) {
    throw BadParams("logdet_directional_derivative: vertex out of range");
  }
  if (i == j) throw SameVertex("logdet_directional_derivative: identical vertices");
  if (!g.is_connected()) {
    throw Disconnected("logdet_directional_derivative: graph must be connected");
  }
  LaplacianBundle bundle = laplacian_bundle(g);
  Eigen::MatrixXd inv =
      bundle.regularized.llt().solve(Eigen::MatrixXd::Identity(n, n));
  // trace(M * L_ij) for the single-pair Laplacian collapses to four entries.
  return inv(i, i) + inv(j, j) - 2.0 * inv(i, j);
}

int uniqueness_brute_force(int n, const std::map<std::pair<int, int>, double>& known,
                           const std::vector<std::pair<int, int>>& unknown) {
  if (n < 2 || n > 16) throw BadParams("uniqueness_brute_force: n out of supported range");
  const int k = static_cast<int>(unknown.size());
  if (k > 20) throw BadParams("uniqueness_brute_force: too many unknown pairs");
  std::vector<Edge> base;
  for (const auto& [p, w] : known) {
    if (w > 0.0) base.push_back({p.first, p.second, w});
  }
  std::map<std::vector<long long>, int> groups;
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    std::vector<Edge> edges = base;
    for (int i = 0; i < k; ++i) {
      if (mask & (1u << i)) {
        edges.push_back({std::min(unknown[i].first, unknown[i].second),
                         std::max(unknown[i].first, unknown[i].second), 1.0});
      }
    }
    WeightedGraph cand(n, edges);
    if (!cand.is_connected()) continue;
    LaplacianBundle bundle = laplacian_bundle(cand);
    std::vector<long long> key;
    key.reserve(unknown.size());
    for (auto [u, v] : unknown) {
      Resistance r = effective_resistance(cand, bundle, u, v);
      key.push_back(std::llround(r.value() * 1e9));
    }
    best = std::max(best, ++groups[key]);
  }
  return best;
}

}  // namespace erq
