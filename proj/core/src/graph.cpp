#include "erq/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "erq/errors.hpp"

namespace erq {

WeightedGraph::WeightedGraph() = default;

WeightedGraph::WeightedGraph(int n, std::vector<Edge> edges) : n_(n) {
  if (n < 0) throw BadParams("graph: vertex count must be nonnegative");

  std::map<std::pair<int, int>, double> merged;
  for (const Edge& e : edges) {
    int u = e.u, v = e.v;
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw BadParams("graph: edge endpoint out of range: " + std::to_string(u) + "," +
                      std::to_string(v));
    if (u == v) throw BadParams("graph: self-loop at vertex " + std::to_string(u));
    if (!(e.w > 0.0) || !std::isfinite(e.w))
      throw BadParams("graph: edge weight must be positive and finite");
    if (u > v) std::swap(u, v);
    merged[{u, v}] += e.w;  // parallel edges merge by summing
  }

  edges_.reserve(merged.size());
  adj_.assign(static_cast<std::size_t>(n), {});
  for (const auto& [key, w] : merged) {
    edges_.push_back({key.first, key.second, w});
    adj_[static_cast<std::size_t>(key.first)].push_back({key.second, w});
    adj_[static_cast<std::size_t>(key.second)].push_back({key.first, w});
    if (w != 1.0) unweighted_ = false;
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());

  // Label connected components with a scan-order DFS.
  component_.assign(static_cast<std::size_t>(n), -1);
  component_count_ = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (component_[static_cast<std::size_t>(s)] != -1) continue;
    int id = component_count_++;
    stack.push_back(s);
    component_[static_cast<std::size_t>(s)] = id;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& [u, w] : adj_[static_cast<std::size_t>(v)]) {
        (void)w;
        if (component_[static_cast<std::size_t>(u)] == -1) {
          component_[static_cast<std::size_t>(u)] = id;
          stack.push_back(u);
        }
      }
    }
  }
}

void WeightedGraph::check_vertex(int v) const {
  if (v < 0 || v >= n_)
    throw BadParams("graph: vertex id out of range: " + std::to_string(v));
}

bool WeightedGraph::has_edge(int u, int v) const { return edge_index(u, v) >= 0; }

double WeightedGraph::weight(int u, int v) const {
  int i = edge_index(u, v);
  return i >= 0 ? edges_[static_cast<std::size_t>(i)].w : 0.0;
}

int WeightedGraph::edge_index(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  if (u == v) return -1;
  if (u > v) std::swap(u, v);
  Edge probe{u, v, 1.0};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), probe,
                             [](const Edge& a, const Edge& b) {
                               return std::pair(a.u, a.v) < std::pair(b.u, b.v);
                             });
  if (it == edges_.end() || it->u != u || it->v != v) return -1;
  return static_cast<int>(it - edges_.begin());
}

const std::vector<std::pair<int, double>>& WeightedGraph::neighbors(int v) const {
  check_vertex(v);
  return adj_[static_cast<std::size_t>(v)];
}

double WeightedGraph::degree(int v) const {
  check_vertex(v);
  double d = 0.0;
  for (const auto& [u, w] : adj_[static_cast<std::size_t>(v)]) {
    (void)u;
    d += w;
  }
  return d;
}

int WeightedGraph::degree_count(int v) const {
  check_vertex(v);
  return static_cast<int>(adj_[static_cast<std::size_t>(v)].size());
}

int WeightedGraph::component_of(int v) const {
  check_vertex(v);
  return component_[static_cast<std::size_t>(v)];
}

bool WeightedGraph::same_component(int u, int v) const {
  return component_of(u) == component_of(v);
}

std::vector<int> WeightedGraph::component_vertices(int v) const {
  int id = component_of(v);
  std::vector<int> out;
  for (int u = 0; u < n_; ++u)
    if (component_[static_cast<std::size_t>(u)] == id) out.push_back(u);
  return out;
}

bool WeightedGraph::operator==(const WeightedGraph& other) const {
  if (n_ != other.n_ || edges_.size() != other.edges_.size()) return false;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].u != other.edges_[i].u || edges_[i].v != other.edges_[i].v ||
        edges_[i].w != other.edges_[i].w)
      return false;
  }
  return true;
}

double max_weight_error(const WeightedGraph& a, const WeightedGraph& b) {
  if (a.vertex_count() != b.vertex_count())
    throw BadParams("max_weight_error: vertex counts differ");
  double err = 0.0;
  for (const Edge& e : a.edges()) err = std::max(err, std::abs(e.w - b.weight(e.u, e.v)));
  for (const Edge& e : b.edges()) err = std::max(err, std::abs(e.w - a.weight(e.u, e.v)));
  return err;
}

InducedSubgraph induced_subgraph(const WeightedGraph& g, std::vector<int> keep) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<int> pos(static_cast<std::size_t>(g.vertex_count()), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    int v = keep[i];
    if (v < 0 || v >= g.vertex_count())
      throw BadParams("induced_subgraph: vertex id out of range");
    pos[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    int pu = pos[static_cast<std::size_t>(e.u)];
    int pv = pos[static_cast<std::size_t>(e.v)];
    if (pu >= 0 && pv >= 0) edges.push_back({pu, pv, e.w});
  }
  return {WeightedGraph(static_cast<int>(keep.size()), std::move(edges)), std::move(keep)};
}

WeightedGraph remove_vertex(const WeightedGraph& g, int v) {
  if (v < 0 || v >= g.vertex_count()) throw BadParams("remove_vertex: id out of range");
  std::vector<int> keep;
  for (int u = 0; u < g.vertex_count(); ++u)
    if (u != v) keep.push_back(u);
  return induced_subgraph(g, std::move(keep)).graph;
}

WeightedGraph remove_edge(const WeightedGraph& g, int u, int v) {
  if (!g.has_edge(u, v)) throw BadParams("remove_edge: edge absent");
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (!(e.u == std::min(u, v) && e.v == std::max(u, v))) edges.push_back(e);
  return WeightedGraph(g.vertex_count(), std::move(edges));
}

}  // namespace erq
