#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace erq {

// One undirected edge.  After graph construction u < v always holds.
struct Edge {
  int u = 0;
  int v = 0;
  double w = 1.0;
};

// Immutable undirected graph with positive edge weights.
//
// Construction canonicalizes the edge list: endpoints are swapped so u < v,
// parallel edges are merged by summing their weights, and edges are sorted
// by (u, v).  Self-loops and nonpositive or nonfinite weights are rejected.
class WeightedGraph {
 public:
  WeightedGraph();  // empty graph on 0 vertices
  WeightedGraph(int n, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_edge(int u, int v) const;
  // Weight of edge {u,v}; 0 when the edge is absent.
  double weight(int u, int v) const;
  // Index of {u,v} in edges(), or -1.
  int edge_index(int u, int v) const;

  // Neighbors of v as (neighbor id, weight), sorted by id.
  const std::vector<std::pair<int, double>>& neighbors(int v) const;
  // Weighted degree (sum of incident weights).
  double degree(int v) const;
  // Number of incident edges.
  int degree_count(int v) const;

  bool is_unweighted() const { return unweighted_; }
  bool is_connected() const { return component_count_ <= 1; }
  int component_count() const { return component_count_; }
  int component_of(int v) const;
  bool same_component(int u, int v) const;
  // Vertices of the component containing v, sorted.
  std::vector<int> component_vertices(int v) const;

  bool operator==(const WeightedGraph& other) const;

 private:
  void check_vertex(int v) const;

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, double>>> adj_;
  std::vector<int> component_;
  int component_count_ = 0;
  bool unweighted_ = true;
};

// Largest absolute weight difference over the union of both edge sets
// (absent edges count as weight 0).  Graphs must share a vertex count.
double max_weight_error(const WeightedGraph& a, const WeightedGraph& b);

// Induced subgraph on `keep` (sorted, deduplicated).  Vertices are densely
// relabeled in sorted order; the returned map sends new id -> original id.
struct InducedSubgraph {
  WeightedGraph graph;
  std::vector<int> vertex_map;
};
InducedSubgraph induced_subgraph(const WeightedGraph& g, std::vector<int> keep);

// Copy of g without vertex v (vertices above v shift down by one).
WeightedGraph remove_vertex(const WeightedGraph& g, int v);

// Copy of g without edge {u,v}; throws BadParams if the edge is absent.
WeightedGraph remove_edge(const WeightedGraph& g, int u, int v);

}  // namespace erq
