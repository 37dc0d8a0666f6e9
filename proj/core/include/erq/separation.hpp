#pragma once

#include "erq/graph.hpp"
#include "erq/oracle.hpp"
#include "erq/verify.hpp"

namespace erq {

// Whether the hidden unweighted graph is the complete graph, decided with
// exactly n-1 distinct resistance queries by comparing against K_n (every
// graph on n vertices is a subgraph of K_n, so the monotone comparison is
// conclusive).  A shortest-path oracle needs Omega(n^2) queries for this.
Verdict clique_check(ErOracleBase& o);

// The two-star pair (G, H) whose resistance matrices agree everywhere except
// on pairs touching the two special leaves, while the centers 0 and 1 are
// adjacent in G but at hop distance 2 in H.  i and j are 1-based leaf labels
// in {3..n}; one must label a leaf of each star.
struct AdjacencyFamilyReport {
  int n = 0;
  int vi = 0;  // 0-based id of the first star's special leaf
  int vj = 0;  // 0-based id of the second star's special leaf
  WeightedGraph g;
  WeightedGraph h;
  double max_agreeing_diff = 0.0;   // max |R_G - R_H| over pairs avoiding {vi, vj}
  bool er_indistinguishable = false;
  int distinguishing_pairs = 0;     // pairs with |R_G - R_H| > tol (all touch vi or vj)
  double r_centers_g = 0.0;         // R(0, 1) in G (= 1)
  double r_centers_h = 0.0;         // R(0, 1) in H (= 1)
  int sp_centers_g = 0;             // hop distance of (0, 1) in G (= 1)
  int sp_centers_h = 0;             // hop distance of (0, 1) in H (= 2)
  bool sp_distinguishes = false;
};
AdjacencyFamilyReport adjacency_family_report(int n, int i, int j, double tol = 1e-9);

}  // namespace erq
