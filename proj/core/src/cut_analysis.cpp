#include "erq/cut_analysis.hpp"

#include <algorithm>
#include <functional>

#include "erq/errors.hpp"

namespace erq {

bool CutAnalysis::is_articulation(int v) const {
  return std::binary_search(articulation_vertices.begin(), articulation_vertices.end(), v);
}

bool CutAnalysis::is_bridge(int u, int v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(bridges.begin(), bridges.end(), std::pair(u, v));
}

bool CutAnalysis::same_vertex_bicomp(int a, int b) const {
  const auto& xa = blocks_of_vertex[static_cast<std::size_t>(a)];
  const auto& xb = blocks_of_vertex[static_cast<std::size_t>(b)];
  std::size_t i = 0, j = 0;
  while (i < xa.size() && j < xb.size()) {
    if (xa[i] == xb[j]) return true;
    if (xa[i] < xb[j])
      ++i;
    else
      ++j;
  }
  return false;
}

bool CutAnalysis::same_edge_bicomp(int a, int b) const {
  return edge_bicomp_id[static_cast<std::size_t>(a)] ==
         edge_bicomp_id[static_cast<std::size_t>(b)];
}

CutAnalysis classical_cut_analysis(const WeightedGraph& g) {
  const int n = g.vertex_count();
  CutAnalysis out;

  // Iterative Hopcroft-Tarjan low-link pass collecting articulation points,
  // bridges, and biconnected components via an edge stack.
  std::vector<int> disc(static_cast<std::size_t>(n), -1);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<char> articulation(static_cast<std::size_t>(n), 0);
  std::vector<std::pair<int, int>> edge_stack;
  int timer = 0;

  struct Frame {
    int v;
    std::size_t next_child = 0;
    int tree_children = 0;
  };

  for (int root = 0; root < n; ++root) {
    if (disc[static_cast<std::size_t>(root)] != -1) continue;
    std::vector<Frame> stack;
    stack.push_back({root});
    disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;

    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& nbrs = g.neighbors(f.v);
      if (f.next_child < nbrs.size()) {
        int u = nbrs[f.next_child++].first;
        if (u == parent[static_cast<std::size_t>(f.v)]) continue;
        if (disc[static_cast<std::size_t>(u)] == -1) {
          parent[static_cast<std::size_t>(u)] = f.v;
          edge_stack.push_back({f.v, u});
          ++f.tree_children;
          disc[static_cast<std::size_t>(u)] = low[static_cast<std::size_t>(u)] = timer++;
          stack.push_back({u});
        } else if (disc[static_cast<std::size_t>(u)] < disc[static_cast<std::size_t>(f.v)]) {
          edge_stack.push_back({f.v, u});
          low[static_cast<std::size_t>(f.v)] =
              std::min(low[static_cast<std::size_t>(f.v)], disc[static_cast<std::size_t>(u)]);
        }
      } else {
        stack.pop_back();
        if (stack.empty()) continue;
        int v = f.v;
        int p = stack.back().v;
        low[static_cast<std::size_t>(p)] =
            std::min(low[static_cast<std::size_t>(p)], low[static_cast<std::size_t>(v)]);

        if (low[static_cast<std::size_t>(v)] > disc[static_cast<std::size_t>(p)])
          out.bridges.push_back({std::min(p, v), std::max(p, v)});

        if (low[static_cast<std::size_t>(v)] >= disc[static_cast<std::size_t>(p)]) {
          // p closes a biconnected component; pop its edges.  The root is an
          // articulation point only when it has a second tree child.
          if (p != root || stack.back().tree_children > 1)
            articulation[static_cast<std::size_t>(p)] = 1;
          std::vector<int> members;
          for (;;) {
            auto [x, y] = edge_stack.back();
            edge_stack.pop_back();
            members.push_back(x);
            members.push_back(y);
            if (x == p && y == v) break;
          }
          std::sort(members.begin(), members.end());
          members.erase(std::unique(members.begin(), members.end()), members.end());
          out.blocks.push_back(std::move(members));
        }
      }
    }
  }

  for (int v = 0; v < n; ++v)
    if (articulation[static_cast<std::size_t>(v)]) out.articulation_vertices.push_back(v);
  std::sort(out.bridges.begin(), out.bridges.end());
  out.bridges.erase(std::unique(out.bridges.begin(), out.bridges.end()), out.bridges.end());

  // Isolated vertices form singleton blocks so every vertex belongs somewhere.
  {
    std::vector<char> in_block(static_cast<std::size_t>(n), 0);
    for (const auto& blk : out.blocks)
      for (int v : blk) in_block[static_cast<std::size_t>(v)] = 1;
    for (int v = 0; v < n; ++v)
      if (!in_block[static_cast<std::size_t>(v)]) out.blocks.push_back({v});
  }
  std::sort(out.blocks.begin(), out.blocks.end());

  out.blocks_of_vertex.assign(static_cast<std::size_t>(n), {});
  for (int b = 0; b < static_cast<int>(out.blocks.size()); ++b)
    for (int v : out.blocks[static_cast<std::size_t>(b)])
      out.blocks_of_vertex[static_cast<std::size_t>(v)].push_back(b);

  // Edge-biconnected components: connected components after bridge removal.
  out.edge_bicomp_id.assign(static_cast<std::size_t>(n), -1);
  out.edge_bicomp_count = 0;
  std::vector<int> dfs;
  for (int s = 0; s < n; ++s) {
    if (out.edge_bicomp_id[static_cast<std::size_t>(s)] != -1) continue;
    int id = out.edge_bicomp_count++;
    dfs.push_back(s);
    out.edge_bicomp_id[static_cast<std::size_t>(s)] = id;
    while (!dfs.empty()) {
      int v = dfs.back();
      dfs.pop_back();
      for (const auto& [u, w] : g.neighbors(v)) {
        (void)w;
        if (out.edge_bicomp_id[static_cast<std::size_t>(u)] != -1) continue;
        if (out.is_bridge(v, u)) continue;
        out.edge_bicomp_id[static_cast<std::size_t>(u)] = id;
        dfs.push_back(u);
      }
    }
  }

  return out;
}

bool separates(const WeightedGraph& g, int b, int a, int c) {
  const int n = g.vertex_count();
  if (a == b || c == b || a == c) throw BadParams("separates: vertices must be distinct");
  if (b < 0 || b >= n) throw BadParams("separates: vertex id out of range");
  // Flood from a without stepping on b; separated iff c is unreached.
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  seen[static_cast<std::size_t>(a)] = 1;
  std::vector<int> stack{a};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& [u, w] : g.neighbors(v)) {
      (void)w;
      if (u == b || seen[static_cast<std::size_t>(u)]) continue;
      seen[static_cast<std::size_t>(u)] = 1;
      stack.push_back(u);
    }
  }
  return !seen[static_cast<std::size_t>(c)];
}

bool is_vertex_biconnected(const WeightedGraph& g) {
  if (!g.is_connected()) return false;
  if (g.vertex_count() <= 2) return true;
  return classical_cut_analysis(g).articulation_vertices.empty();
}

bool is_edge_biconnected(const WeightedGraph& g) {
  if (!g.is_connected()) return false;
  return classical_cut_analysis(g).bridges.empty();
}

}  // namespace erq
