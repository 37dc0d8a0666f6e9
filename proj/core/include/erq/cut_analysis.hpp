#pragma once

#include <utility>
#include <vector>

#include "erq/graph.hpp"

namespace erq {

// Classical (query-free) cut structure computed by depth-first search.
// Serves as the reference answer for the resistance-based decision
// procedures.
struct CutAnalysis {
  std::vector<int> articulation_vertices;            // sorted
  std::vector<std::pair<int, int>> bridges;          // (u < v), sorted
  std::vector<std::vector<int>> blocks;              // vertex sets of biconnected components
  std::vector<int> edge_bicomp_id;                   // per vertex, id of its bridge-free component
  int edge_bicomp_count = 0;

  bool is_articulation(int v) const;
  bool is_bridge(int u, int v) const;
  // True when a and b lie in one common biconnected component.
  bool same_vertex_bicomp(int a, int b) const;
  bool same_edge_bicomp(int a, int b) const;

  // filled during construction: block ids per vertex, sorted
  std::vector<std::vector<int>> blocks_of_vertex;
};

CutAnalysis classical_cut_analysis(const WeightedGraph& g);

// True when every path from a to c passes through b (checked by removing b).
bool separates(const WeightedGraph& g, int b, int a, int c);

// Connected with no articulation vertex (and at least one edge for n = 2;
// by convention K1 and K2 count as vertex-biconnected here).
bool is_vertex_biconnected(const WeightedGraph& g);
// Connected with no bridge.
bool is_edge_biconnected(const WeightedGraph& g);

}  // namespace erq
