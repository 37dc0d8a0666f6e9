#include "erq/separation.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <queue>
#include <vector>

#include "erq/errors.hpp"
#include "erq/generators.hpp"
#include "erq/linalg.hpp"

namespace erq {
namespace {

int hop_distance(const WeightedGraph& g, int s, int t) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::queue<int> q;
  dist[s] = 0;
  q.push(s);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    if (u == t) return dist[u];
    for (const auto& [v, w] : g.neighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  return -1;
}

}  // namespace

Verdict clique_check(ErOracleBase& o) {
  const int n = o.vertex_count();
  if (n < 2) throw BadParams("clique_check: need at least two vertices");
  Verdict v = equal_monotone(o, clique_graph(n));
  if (v.saw_infinite) throw Disconnected("clique_check: hidden graph is disconnected");
  return v;
}

AdjacencyFamilyReport adjacency_family_report(int n, int i, int j, double tol) {
  if (i < 3 || i > n || j < 3 || j > n || i == j) {
    throw BadParams("adjacency_family_report: leaf labels must be distinct and in {3..n}");
  }
  AdjacencyFamilyReport rep;
  rep.n = n;
  // Labels are 1-based; the generator takes 0-based ids and normalizes which
  // star each leaf belongs to (or rejects if both are in one star).
  auto [g, h] = sp_er_pair(n, i - 1, j - 1);
  rep.g = g;
  rep.h = h;
  {
    // Recover the normalized special leaves from H: they are the only
    // vertices adjacent to both centers.
    std::vector<int> special;
    for (int v = 2; v < n; ++v) {
      if (h.has_edge(0, v) && h.has_edge(1, v)) special.push_back(v);
    }
    rep.vi = special.at(0);
    rep.vj = special.at(1);
    if (rep.vi > n / 2) std::swap(rep.vi, rep.vj);
  }

  ErMatrix rg = all_pairs_er(g);
  ErMatrix rh = all_pairs_er(h);
  rep.max_agreeing_diff = 0.0;
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      double diff = std::abs(rg(x, y).value() - rh(x, y).value());
      bool avoids = x != rep.vi && x != rep.vj && y != rep.vi && y != rep.vj;
      if (avoids) {
        rep.max_agreeing_diff = std::max(rep.max_agreeing_diff, diff);
      } else if (diff > tol) {
        ++rep.distinguishing_pairs;
      }
    }
  }
  rep.er_indistinguishable = rep.max_agreeing_diff <= tol;
  rep.r_centers_g = rg(0, 1).value();
  rep.r_centers_h = rh(0, 1).value();
  rep.sp_centers_g = hop_distance(g, 0, 1);
  rep.sp_centers_h = hop_distance(h, 0, 1);
  rep.sp_distinguishes = rep.sp_centers_g != rep.sp_centers_h;
  return rep;
}

}  // namespace erq
