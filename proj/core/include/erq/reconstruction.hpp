#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "erq/graph.hpp"
#include "erq/oracle.hpp"
#include "erq/tolerance.hpp"
#include "erq/tree_decomposition.hpp"

namespace erq {

struct ReconstructionResult {
  WeightedGraph graph;
  QueryLedger queries_used;
  // Filled by callers that hold the ground truth (tests, CLI cross-checks).
  std::optional<double> max_weight_error;
};

// Full recovery from all C(n,2) pairwise resistances: R -> L+ -> L -> edges.
ReconstructionResult reconstruct_full(ErOracleBase& o, double floor_scale = 1e-7);

// Recovery of the vertex-elimination reduction onto `keep` with exactly
// C(|keep|,2) queries.  vertex_map sends new id -> original id.
struct SchurReconstruction {
  WeightedGraph graph;
  std::vector<int> vertex_map;
  QueryLedger queries_used;
};
SchurReconstruction reconstruct_schur(ErOracleBase& o, std::vector<int> keep,
                                      double floor_scale = 1e-7);

// Neighbors of v with weights, from the unit ball around v plus a reduction
// onto it.  Distinct queries <= (n-1) + C(|ball|,2).  Correct for unweighted
// hidden graphs (edges then satisfy R <= 1, so the ball contains them all).
std::vector<std::pair<int, double>> discover_neighbors(ErOracleBase& o, int v,
                                                       double ball_tol = 1e-9,
                                                       double floor_scale = 1e-7);

// Memoizing wrapper so repeated neighborhood lookups (testers, adapters)
// pay for each vertex once.
class NeighborhoodCache {
 public:
  explicit NeighborhoodCache(ErOracleBase& o, double ball_tol = 1e-9);
  const std::vector<std::pair<int, double>>& neighbors(int v);

 private:
  ErOracleBase& oracle_;
  double ball_tol_;
  std::map<int, std::vector<std::pair<int, double>>> cache_;
};

// Reconstruction guided by a tree decomposition: repeatedly reduce onto the
// lowest-index leaf bag, record the eliminated rows, then recombine.
// Each processed bag costs at most its own pair count, so distinct queries
// stay within (#bags) * C(width+1, 2).
ReconstructionResult reconstruct_from_td(ErOracleBase& o, const TreeDecomposition& td,
                                         double floor_scale = 1e-7);

// Partially known graph: `known` holds the nonzero known weights, `unknown`
// lists the pairs (in query order) whose weights are to be recovered, and
// `weight_set` the finite candidate set for the exhaustive algorithm.
// Pairs are normalized to (low, high); known and unknown must be disjoint.
struct CompletionInstance {
  int n = 0;
  std::map<std::pair<int, int>, double> known;
  std::vector<std::pair<int, int>> unknown;
  std::vector<double> weight_set;

  void validate() const;  // throws BadParams
  // The known part as a graph (zero-weight pairs omitted).
  WeightedGraph known_graph() const;
};

struct CompletionResult {
  WeightedGraph graph;
  std::vector<double> recovered;  // aligned with CompletionInstance::unknown
  QueryLedger queries_used;
  std::int64_t candidates_total = 0;      // exhaustive: assignments enumerated
  std::int64_t candidates_evaluated = 0;  // exhaustive: connected ones scored
};

// Quadratic-query completion: reduce onto the unknown pairs' endpoint set U
// (C(|U|,2) queries, |U| <= 2k), then undo the reduction using the known
// blocks to read off the unknown weights.
CompletionResult complete_quadratic(ErOracleBase& o, const CompletionInstance& inst,
                                    Tolerance tol = {}, double floor_scale = 1e-7);

// k-query completion: query exactly the unknown pairs, then enumerate all
// |weight_set|^k assignments and keep the one reproducing the answers.
CompletionResult complete_exhaustive(ErOracleBase& o, const CompletionInstance& inst,
                                     double rel_tol = 1e-6);

// d/dt log det(L_reg + t * L_ij) at t = 0, computed as the trace of
// L_reg^{-1} times the pair Laplacian; equals R(i,j).
double logdet_directional_derivative(const WeightedGraph& g, int i, int j);

// Test oracle for completion uniqueness: enumerates all 2^|unknown| {0,1}
// assignments and returns the largest number of connected completions
// sharing one resistance vector on the unknown pairs (rounded to 1e-9).
int uniqueness_brute_force(int n, const std::map<std::pair<int, int>, double>& known,
                           const std::vector<std::pair<int, int>>& unknown);

}  // namespace erq
