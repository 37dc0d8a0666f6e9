#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "erq/graph.hpp"
#include "erq/tree_decomposition.hpp"

namespace erq {

// Output of generate(): the graph, plus a tree decomposition for families
// that carry one, plus a paired second graph for two-graph families.
struct Generated {
  WeightedGraph graph;
  std::optional<TreeDecomposition> td;
  std::optional<WeightedGraph> paired;
};

WeightedGraph path_graph(int n);
WeightedGraph cycle_graph(int n);
// Star with center 0.
WeightedGraph star_graph(int n);
WeightedGraph clique_graph(int n);

// Uniform random labeled tree (Pruefer decoding).
WeightedGraph random_tree(int n, std::uint64_t seed);
// Random spanning tree plus uniformly chosen extra edges up to m total.
WeightedGraph random_connected(int n, int m, std::uint64_t seed);
// Same endpoints, weights drawn uniformly from [lo, hi].
WeightedGraph with_random_weights(const WeightedGraph& g, double lo, double hi,
                                  std::uint64_t seed);
// Connected graph whose maximum degree stays <= degree_bound.
WeightedGraph random_bounded_degree(int n, int degree_bound, int extra_edges,
                                    std::uint64_t seed);

// Caterpillar tree (spine plus legs) together with a width-1 path
// decomposition of it.
Generated caterpillar(int n, std::uint64_t seed);

// Connected subgraph of a random k-tree together with the inherited
// width-k decomposition.  keep_prob is the survival probability of each
// non-spanning-tree edge.
Generated partial_ktree(int n, int k, double keep_prob, std::uint64_t seed);

// t unit triangles chained by bridge edges; 3t vertices.
WeightedGraph triangle_chain(int t);

// The two-star separation family.  G: stars centered at 0 and 1 (leaves
// 2..n/2 and n/2+1..n-1) plus the center edge (0,1).  H: the center edge is
// replaced by the 4-cycle 0-vi-1-vj-0 through leaf vi of the first star and
// leaf vj of the second.  vi, vj are 0-based ids.
std::pair<WeightedGraph, WeightedGraph> sp_er_pair(int n, int vi, int vj);

// Friendship windmill: t triangles sharing one hub vertex (vertex 0).
WeightedGraph windmill(int t);

// Ladder: two parallel n-paths joined by rungs.  2n vertices, max degree 3,
// treewidth 2 (used for density-plateau measurements).
WeightedGraph ladder(int n);

// Name-dispatched generation for the CLI.  Families: path, cycle, star,
// clique, random_tree, random_connected, caterpillar, partial_ktree,
// triangle_chain, windmill, ladder, sp_er_pair.  Params are
// family-specific: n, m, k, i, j, t, keep, wlo, whi.
Generated generate(const std::string& family, const std::map<std::string, double>& params,
                   std::uint64_t seed);

}  // namespace erq
