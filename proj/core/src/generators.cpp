#include "erq/generators.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "erq/errors.hpp"
#include "erq/rng.hpp"

namespace erq {

WeightedGraph path_graph(int n) {
  if (n < 1) throw BadParams("path_graph: n must be positive");
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, 1.0});
  return WeightedGraph(n, std::move(e));
}

WeightedGraph cycle_graph(int n) {
  if (n < 3) throw BadParams("cycle_graph: n must be at least 3");
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, 1.0});
  e.push_back({0, n - 1, 1.0});
  return WeightedGraph(n, std::move(e));
}

WeightedGraph star_graph(int n) {
  if (n < 2) throw BadParams("star_graph: n must be at least 2");
  std::vector<Edge> e;
  for (int i = 1; i < n; ++i) e.push_back({0, i, 1.0});
  return WeightedGraph(n, std::move(e));
}

WeightedGraph clique_graph(int n) {
  if (n < 1) throw BadParams("clique_graph: n must be positive");
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j, 1.0});
  return WeightedGraph(n, std::move(e));
}

namespace {

WeightedGraph random_tree_impl(int n, Rng& rng) {
  if (n < 1) throw BadParams("random_tree: n must be positive");
  if (n == 1) return WeightedGraph(1, {});
  if (n == 2) return WeightedGraph(2, {{0, 1, 1.0}});

  // Decode a uniformly random Pruefer sequence.
  std::vector<int> seq(static_cast<std::size_t>(n - 2));
  for (auto& a : seq) a = rng.index(n);
  std::vector<int> degree(static_cast<std::size_t>(n), 1);
  for (int a : seq) ++degree[static_cast<std::size_t>(a)];

  std::set<int> leaves;
  for (int v = 0; v < n; ++v)
    if (degree[static_cast<std::size_t>(v)] == 1) leaves.insert(v);

  std::vector<Edge> edges;
  for (int a : seq) {
    int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.push_back({leaf, a, 1.0});
    if (--degree[static_cast<std::size_t>(a)] == 1) leaves.insert(a);
  }
  int x = *leaves.begin();
  int y = *std::next(leaves.begin());
  edges.push_back({x, y, 1.0});
  return WeightedGraph(n, std::move(edges));
}

}  // namespace

WeightedGraph random_tree(int n, std::uint64_t seed) {
  Rng rng(seed);
  return random_tree_impl(n, rng);
}

WeightedGraph random_connected(int n, int m, std::uint64_t seed) {
  if (n < 1) throw BadParams("random_connected: n must be positive");
  const long long max_m = static_cast<long long>(n) * (n - 1) / 2;
  if (m < n - 1 || m > max_m)
    throw BadParams("random_connected: m must lie in [n-1, n(n-1)/2]");
  Rng rng(seed);
  WeightedGraph tree = random_tree_impl(n, rng);
  std::vector<Edge> edges = tree.edges();

  std::vector<std::pair<int, int>> spare;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!tree.has_edge(u, v)) spare.push_back({u, v});
  rng.shuffle(spare);
  for (int i = 0; i < m - (n - 1); ++i)
    edges.push_back({spare[static_cast<std::size_t>(i)].first,
                     spare[static_cast<std::size_t>(i)].second, 1.0});
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph with_random_weights(const WeightedGraph& g, double lo, double hi,
                                  std::uint64_t seed) {
  if (!(lo > 0.0) || !(hi >= lo)) throw BadParams("with_random_weights: need 0 < lo <= hi");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v, rng.uniform(lo, hi)});
  return WeightedGraph(g.vertex_count(), std::move(edges));
}

WeightedGraph random_bounded_degree(int n, int degree_bound, int extra_edges,
                                    std::uint64_t seed) {
  if (n < 1 || degree_bound < 2)
    throw BadParams("random_bounded_degree: need n >= 1 and degree_bound >= 2");
  Rng rng(seed);
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  std::vector<Edge> edges;
  // Random tree with capped attachment degree.
  for (int v = 1; v < n; ++v) {
    std::vector<int> open;
    for (int u = 0; u < v; ++u)
      if (deg[static_cast<std::size_t>(u)] < degree_bound) open.push_back(u);
    if (open.empty())
      throw BadParams("random_bounded_degree: bound too small for the vertex count");
    int u = open[static_cast<std::size_t>(rng.index(static_cast<int>(open.size())))];
    edges.push_back({u, v, 1.0});
    ++deg[static_cast<std::size_t>(u)];
    ++deg[static_cast<std::size_t>(v)];
  }
  WeightedGraph base(n, edges);
  int added = 0, attempts = 0;
  while (added < extra_edges && attempts < 50 * (extra_edges + 1)) {
    ++attempts;
    int u = rng.index(n), v = rng.index(n);
    if (u == v) continue;
    if (deg[static_cast<std::size_t>(u)] >= degree_bound ||
        deg[static_cast<std::size_t>(v)] >= degree_bound)
      continue;
    if (base.has_edge(u, v)) continue;
    bool dup = false;
    for (const Edge& e : edges)
      if (e.u == std::min(u, v) && e.v == std::max(u, v)) dup = true;
    if (dup) continue;
    edges.push_back({u, v, 1.0});
    ++deg[static_cast<std::size_t>(u)];
    ++deg[static_cast<std::size_t>(v)];
    ++added;
  }
  return WeightedGraph(n, std::move(edges));
}

Generated caterpillar(int n, std::uint64_t seed) {
  if (n < 1) throw BadParams("caterpillar: n must be positive");
  Rng rng(seed);
  const int spine = (n + 1) / 2;
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < spine; ++i) edges.push_back({i, i + 1, 1.0});
  std::vector<std::vector<int>> legs(static_cast<std::size_t>(spine));
  for (int v = spine; v < n; ++v) {
    int s = rng.index(spine);
    edges.push_back({s, v, 1.0});
    legs[static_cast<std::size_t>(s)].push_back(v);
  }
  WeightedGraph g(n, std::move(edges));

  // Width-1 path decomposition: walk the spine, inserting leg bags after
  // each spine-edge bag.
  TreeDecomposition td;
  if (n == 1) {
    td.bags.push_back({0});
  } else {
    for (int i = 0; i < spine; ++i) {
      if (i > 0) td.bags.push_back({i - 1, i});
      for (int l : legs[static_cast<std::size_t>(i)]) td.bags.push_back({i, l});
    }
    for (int b = 0; b + 1 < td.bag_count(); ++b) td.tree_edges.push_back({b, b + 1});
  }
  return {std::move(g), std::move(td), std::nullopt};
}

Generated partial_ktree(int n, int k, double keep_prob, std::uint64_t seed) {
  if (k < 1 || n < k + 1) throw BadParams("partial_ktree: need k >= 1 and n >= k+1");
  if (!(keep_prob >= 0.0 && keep_prob <= 1.0))
    throw BadParams("partial_ktree: keep_prob must lie in [0,1]");
  Rng rng(seed);

  TreeDecomposition td;
  std::vector<Edge> edges;
  std::vector<int> root_bag;
  for (int v = 0; v <= k; ++v) root_bag.push_back(v);
  for (int u = 0; u <= k; ++u)
    for (int v = u + 1; v <= k; ++v) edges.push_back({u, v, 1.0});
  td.bags.push_back(root_bag);

  for (int v = k + 1; v < n; ++v) {
    int host = rng.index(td.bag_count());
    std::vector<int> sub = td.bags[static_cast<std::size_t>(host)];
    sub.erase(sub.begin() + rng.index(static_cast<int>(sub.size())));  // keep k of k+1
    for (int u : sub) edges.push_back({u, v, 1.0});
    std::vector<int> bag = sub;
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    td.tree_edges.push_back({host, td.bag_count()});
    td.bags.push_back(std::move(bag));
  }
  WeightedGraph full(n, edges);

  // Thin out non-spanning-tree edges; the decomposition stays valid for any
  // subgraph.
  std::vector<char> in_tree(edges.size(), 0);
  {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    seen[0] = 1;
    std::vector<int> stack{0};
    std::vector<int> parent_edge(static_cast<std::size_t>(n), -1);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& [u, w] : full.neighbors(v)) {
        (void)w;
        if (seen[static_cast<std::size_t>(u)]) continue;
        seen[static_cast<std::size_t>(u)] = 1;
        parent_edge[static_cast<std::size_t>(u)] = full.edge_index(v, u);
        stack.push_back(u);
      }
    }
    for (int v = 1; v < n; ++v) in_tree[static_cast<std::size_t>(parent_edge[static_cast<std::size_t>(v)])] = 1;
  }
  std::vector<Edge> kept;
  for (std::size_t i = 0; i < full.edges().size(); ++i) {
    if (in_tree[i] || rng.chance(keep_prob)) kept.push_back(full.edges()[i]);
  }
  return {WeightedGraph(n, std::move(kept)), std::move(td), std::nullopt};
}

WeightedGraph triangle_chain(int t) {
  if (t < 1) throw BadParams("triangle_chain: t must be positive");
  std::vector<Edge> e;
  for (int i = 0; i < t; ++i) {
    int a = 3 * i, b = 3 * i + 1, c = 3 * i + 2;
    e.push_back({a, b, 1.0});
    e.push_back({a, c, 1.0});
    e.push_back({b, c, 1.0});
    if (i + 1 < t) e.push_back({c, 3 * (i + 1), 1.0});
  }
  return WeightedGraph(3 * t, std::move(e));
}

std::pair<WeightedGraph, WeightedGraph> sp_er_pair(int n, int vi, int vj) {
  if (n < 8 || n % 2 != 0) throw BadParams("sp_er_pair: n must be even and at least 8");
  const int half = n / 2;
  auto in_first = [&](int v) { return v >= 2 && v <= half; };
  auto in_second = [&](int v) { return v > half && v < n; };
  if (!((in_first(vi) && in_second(vj)) || (in_first(vj) && in_second(vi))))
    throw BadParams("sp_er_pair: need one leaf from each star");
  if (in_second(vi)) std::swap(vi, vj);

  std::vector<Edge> stars;
  for (int x = 2; x <= half; ++x) stars.push_back({0, x, 1.0});
  for (int y = half + 1; y < n; ++y) stars.push_back({1, y, 1.0});

  std::vector<Edge> ge = stars;
  ge.push_back({0, 1, 1.0});

  // The 4-cycle 0-vi-1-vj-0: the star already holds (0,vi) and (1,vj).
  std::vector<Edge> he = stars;
  he.push_back({vi, 1, 1.0});
  he.push_back({vj, 0, 1.0});

  return {WeightedGraph(n, std::move(ge)), WeightedGraph(n, std::move(he))};
}

WeightedGraph windmill(int t) {
  if (t < 1) throw BadParams("windmill: t must be positive");
  std::vector<Edge> e;
  for (int i = 0; i < t; ++i) {
    int a = 1 + 2 * i, b = 2 + 2 * i;
    e.push_back({0, a, 1.0});
    e.push_back({0, b, 1.0});
    e.push_back({a, b, 1.0});
  }
  return WeightedGraph(2 * t + 1, std::move(e));
}

WeightedGraph ladder(int n) {
  if (n < 2) throw BadParams("ladder: n must be at least 2");
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) {
    e.push_back({i, i + 1, 1.0});
    e.push_back({n + i, n + i + 1, 1.0});
  }
  for (int i = 0; i < n; ++i) e.push_back({i, n + i, 1.0});
  return WeightedGraph(2 * n, std::move(e));
}

namespace {

int int_param(const std::map<std::string, double>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw BadParams("generate: missing parameter '" + key + "'");
  return static_cast<int>(std::llround(it->second));
}

int int_param_or(const std::map<std::string, double>& params, const std::string& key,
                 int fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : static_cast<int>(std::llround(it->second));
}

double real_param_or(const std::map<std::string, double>& params, const std::string& key,
                     double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

}  // namespace

Generated generate(const std::string& family, const std::map<std::string, double>& params,
                   std::uint64_t seed) {
  Generated out;
  if (family == "path") {
    out.graph = path_graph(int_param(params, "n"));
  } else if (family == "cycle") {
    out.graph = cycle_graph(int_param(params, "n"));
  } else if (family == "star") {
    out.graph = star_graph(int_param(params, "n"));
  } else if (family == "clique") {
    out.graph = clique_graph(int_param(params, "n"));
  } else if (family == "random_tree") {
    out.graph = random_tree(int_param(params, "n"), seed);
  } else if (family == "random_connected") {
    out.graph = random_connected(int_param(params, "n"), int_param(params, "m"), seed);
  } else if (family == "caterpillar") {
    Generated g = caterpillar(int_param(params, "n"), seed);
    out = std::move(g);
  } else if (family == "partial_ktree") {
    Generated g = partial_ktree(int_param(params, "n"), int_param_or(params, "k", 2),
                                real_param_or(params, "keep", 0.5), seed);
    out = std::move(g);
  } else if (family == "triangle_chain") {
    out.graph = triangle_chain(int_param(params, "t"));
  } else if (family == "windmill") {
    out.graph = windmill(int_param(params, "t"));
  } else if (family == "ladder") {
    out.graph = ladder(int_param(params, "n"));
  } else if (family == "sp_er_pair") {
    auto [g, h] =
        sp_er_pair(int_param(params, "n"), int_param(params, "i"), int_param(params, "j"));
    out.graph = std::move(g);
    out.paired = std::move(h);
  } else {
    throw BadParams("generate: unknown family '" + family + "'");
  }

  auto lo = params.find("wlo");
  auto hi = params.find("whi");
  if (lo != params.end() || hi != params.end()) {
    if (lo == params.end() || hi == params.end())
      throw BadParams("generate: wlo and whi must be given together");
    out.graph = with_random_weights(out.graph, lo->second, hi->second, seed ^ 0x9e3779b97f4a7c15ull);
    if (out.paired)
      out.paired = with_random_weights(*out.paired, lo->second, hi->second,
                                       seed ^ 0x9e3779b97f4a7c15ull);
  }
  return out;
}

}  // namespace erq
