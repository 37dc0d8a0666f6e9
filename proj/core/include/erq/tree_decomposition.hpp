#pragma once

#include <string>
#include <utility>
#include <vector>

#include "erq/graph.hpp"

namespace erq {

// Tree decomposition: bags of vertices plus a tree over bag indices.
// Bags are kept sorted and duplicate-free.
struct TreeDecomposition {
  std::vector<std::vector<int>> bags;
  std::vector<std::pair<int, int>> tree_edges;

  int bag_count() const { return static_cast<int>(bags.size()); }
  // Largest bag size minus one; -1 for an empty decomposition.
  int width() const;
};

// Validation outcome.  condition identifies the first violated rule:
//   0 = bag tree malformed (not a tree, bad ids, unsorted bags)
//   1 = some vertex is in no bag
//   2 = some edge has no bag containing both endpoints
//   3 = the bags holding some vertex do not form a connected subtree
struct TdCheck {
  bool valid = true;
  int condition = 0;
  std::string violation;  // human-readable description when invalid

  static TdCheck fail(int cond, std::string what) { return {false, cond, std::move(what)}; }
};

// Checks conditions 0,1,2,3 in order against g.
TdCheck validate_tree_decomposition(const WeightedGraph& g, const TreeDecomposition& td);

// Graph-free part of validation (conditions 0, 1 and 3); usable when the
// graph behind the decomposition is hidden.
TdCheck validate_td_structure(const TreeDecomposition& td, int n);

// Largest number of bags any single vertex appears in.
int max_bags_per_vertex(const TreeDecomposition& td, int n);

// Hop distance between every pair of bags in the decomposition tree.
std::vector<std::vector<int>> bag_hop_distances(const TreeDecomposition& td);

// Repeatedly removes empty bags of tree-degree <= 1 (files sometimes carry
// them); bag indices are compacted.
TreeDecomposition drop_empty_leaf_bags(TreeDecomposition td);

// Width-1 decomposition of a tree: one bag {v, parent(v)} per non-root
// vertex (single bag {0} when the tree has one vertex).
TreeDecomposition tree_edge_decomposition(const WeightedGraph& tree);

}  // namespace erq
