#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "erq/graph.hpp"
#include "erq/oracle.hpp"
#include "erq/rng.hpp"
#include "erq/tree_decomposition.hpp"

namespace erq {

enum class TestReason {
  NoEvidence,  // accepted, or rejected by a plugged-in tester (see witness)
  CutVertexFound,
  CutEdgeFound,
  SmallLowDegreeComponent,
  DifferentBiconnectedComponent,
  Disconnected,
};

const char* to_string(TestReason reason);

struct TestOutcome {
  bool accept = true;
  TestReason reason = TestReason::NoEvidence;
  std::optional<int> witness_vertex;
  std::optional<std::pair<int, int>> witness_edge;
  std::vector<int> witness_vertices;  // e.g. a triangle found by a plugged tester
  std::string note;
  int samples_used = 0;
  QueryLedger queries_used;
};

// Vertices within resistance distance 1 (+ ball_tol slack) of v, excluding v
// itself, sorted by (resistance, id).  Plain mode costs n-1 resistance
// queries; with the sorted-ball capability it streams ball items instead and
// stops one past the radius.
struct BallEntry {
  int vertex = 0;
  double resistance = 0.0;
};
std::vector<BallEntry> unit_ball(ErOracleBase& o, int v, double ball_tol = 1e-9);

// rho(G): the largest closed unit-ball size (the center counts itself).
struct ErDensity {
  int rho = 0;
  int argmax = 0;  // lowest vertex attaining rho
};
ErDensity er_density(const WeightedGraph& g, double ball_tol = 1e-9);

// One-sided tester: accepts every vertex-biconnected graph; rejects graphs
// eps-far from vertex-biconnectivity with probability >= 2/3.  Connectivity
// pre-check (n-1 queries), then the anchor vertex 0 is tested as a cut
// vertex and ceil(4/eps) sampled vertices are tested against the anchor's
// block.  Distinct queries <= (n-1) + (s+1)(2n-3).
TestOutcome test_vertex_biconnectivity(ErOracleBase& o, double eps, std::uint64_t seed);

// One-sided tester: accepts every edge-biconnected graph; rejects graphs
// eps-far from edge-biconnectivity (unweighted, degree-bounded) with
// probability >= 2/3.  Runs ceil(16/eps) ball-limited searches and rejects
// on any discovered edge of resistance 1.  Distinct queries
// O(n/eps^2 + 1/eps^4).
TestOutcome test_edge_biconnectivity(ErOracleBase& o, double eps, std::uint64_t seed,
                                     double ball_tol = 1e-9);

// Adjacency-style access handed to plugged-in bounded-degree testers.
// degree(v) is the number of neighbors; neighbor(v, i) the i-th neighbor
// (sorted by id) or nullopt when i >= degree(v).
struct DegreeCallbacks {
  std::function<int(int)> degree;
  std::function<std::optional<int>(int, int)> neighbor;
};

class BoundedDegreeTester {
 public:
  BoundedDegreeTester(int degree_bound, double eps);
  virtual ~BoundedDegreeTester() = default;

  int degree_bound() const { return degree_bound_; }
  double epsilon() const { return eps_; }

  struct RunResult {
    bool accept = true;
    std::vector<int> witness;
  };
  virtual RunResult run(int n, const DegreeCallbacks& cb, Rng& rng) const = 0;

 private:
  int degree_bound_;
  double eps_;
};

// Demonstration tester: samples ceil(2/eps) vertices and scans their radius-2
// neighborhoods for a triangle.
class TriangleFreenessTester final : public BoundedDegreeTester {
 public:
  TriangleFreenessTester(int degree_bound, double eps);
  RunResult run(int n, const DegreeCallbacks& cb, Rng& rng) const override;
};

// Runs a bounded-degree tester against the resistance oracle by answering its
// adjacency callbacks through cached neighborhood discovery.  Cost is
// bounded by callbacks * (n + rho^2) distinct queries.
struct AdapterReport {
  TestOutcome outcome;
  std::int64_t degree_calls = 0;
  std::int64_t neighbor_calls = 0;
  std::int64_t callbacks = 0;  // degree_calls + neighbor_calls
};
AdapterReport adapt_bounded_degree_tester(ErOracleBase& o, const BoundedDegreeTester& tester,
                                          std::uint64_t seed);

// Samples vertex pairs and checks the bag-metric stretch bound
//   r_T(u, v) <= 4 * b_t * d_G * w_T * R(u, v)
// where r_T is the hop distance between the nearest bags containing u and v,
// b_t bounds how many bags any vertex appears in, d_G is the maximum degree
// and w_T the decomposition width.  Requires an unweighted graph.
struct TdDistanceReport {
  double max_ratio = 0.0;  // max over sampled pairs of r_T / R
  double bound = 0.0;      // 4 * b_t * d_G * w_T
  int pairs_checked = 0;
  bool holds = true;
  int b_t = 0;
  int width = 0;
  int max_degree = 0;
};
TdDistanceReport td_distance_bound_check(const WeightedGraph& g, const TreeDecomposition& td,
                                         int b_t, int samples, std::uint64_t seed);

}  // namespace erq
