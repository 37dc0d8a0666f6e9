#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "erq/errors.hpp"
#include "erq/graph.hpp"

namespace erq {

// Effective resistance value: finite nonnegative, or infinite when the two
// endpoints lie in different components.  No numeric sentinel leaks into the
// API; callers must branch on is_infinite() before reading value().
class Resistance {
 public:
  static Resistance finite(double v) {
    Resistance r;
    r.finite_ = true;
    r.value_ = v;
    return r;
  }
  static Resistance infinite() { return Resistance{}; }

  bool is_finite() const { return finite_; }
  bool is_infinite() const { return !finite_; }
  double value() const {
    if (!finite_) throw DisconnectedPair("Resistance: value() on an infinite resistance");
    return value_;
  }

  bool operator==(const Resistance& o) const {
    return finite_ == o.finite_ && (!finite_ || value_ == o.value_);
  }

 private:
  bool finite_ = false;
  double value_ = 0.0;
};

// Dense Laplacian package for one graph: L = D - A, the regularized matrix
// L + J/n, the Moore-Penrose pseudoinverse L+, and the weighted incidence
// data (each edge oriented from its lower id to its higher id).
struct LaplacianBundle {
  Eigen::MatrixXd laplacian;
  Eigen::MatrixXd regularized;
  Eigen::MatrixXd pinv;
  Eigen::MatrixXd incidence;   // n x m; column e has -1 at edge u, +1 at edge v
  Eigen::VectorXd edge_weights;
};

LaplacianBundle laplacian_bundle(const WeightedGraph& g);

Eigen::MatrixXd laplacian_matrix(const WeightedGraph& g);

// R(u,v) = (1_u - 1_v)^T L+ (1_u - 1_v), or infinite across components.
Resistance effective_resistance(const WeightedGraph& g, int u, int v);
Resistance effective_resistance(const WeightedGraph& g, const LaplacianBundle& lb, int u,
                                int v);

// Symmetric matrix of pairwise effective resistances with zero diagonal.
class ErMatrix {
 public:
  explicit ErMatrix(int n);

  int size() const { return n_; }
  Resistance operator()(int u, int v) const;
  void set(int u, int v, Resistance r);

  bool all_finite() const;
  // Dense matrix of values; throws Disconnected when any entry is infinite.
  Eigen::MatrixXd finite_values() const;

 private:
  int n_;
  std::vector<Resistance> cells_;  // row-major upper triangle, diagonal implicit
};

ErMatrix all_pairs_er(const WeightedGraph& g);

// Unit electrical current from source to sink.  edge_flow is aligned with
// g.edges() and signed in the low-id -> high-id orientation; energy equals
// sum of flow^2 / weight, which equals R(source, sink).
struct UnitFlow {
  int source = 0;
  int sink = 0;
  Eigen::VectorXd edge_flow;
  double energy = 0.0;
};

UnitFlow electrical_flow(const WeightedGraph& g, int source, int sink);

// Net flow imbalance at every vertex (should be +1 at source, -1 at sink,
// 0 elsewhere up to roundoff).  Used by conservation checks.
Eigen::VectorXd flow_divergence(const WeightedGraph& g, const UnitFlow& f);

// Schur complement of the Laplacian onto `keep`:
//   L/U = L[U,U] - L[U,W] L[W,W]+ L[W,U],   W = complement of U.
// The result is again a graph Laplacian; off-diagonal entries below
// floor_scale * max(diagonal) are treated as zero.  vertex_map sends new
// id -> original id (keep sorted ascending).
struct SchurResult {
  WeightedGraph graph;
  std::vector<int> vertex_map;
};

SchurResult schur_complement(const WeightedGraph& g, std::vector<int> keep,
                             double floor_scale = 1e-7);

// Conversion steps shared by reconstruction:
//   resistance matrix R  ->  L+ = -1/2 (I - J/n) R (I - J/n)
//   L+                   ->  L  = (L+ + J/n)^{-1} - J/n   (connected case)
//   L                    ->  graph with weights -L(i,j) above the floor
Eigen::MatrixXd er_to_laplacian_pinv(const Eigen::MatrixXd& R);
Eigen::MatrixXd pinv_to_laplacian(const Eigen::MatrixXd& pinv);
WeightedGraph laplacian_to_graph(const Eigen::MatrixXd& L, double floor_scale = 1e-7);

// Max |a-b| entry over symmetric matrices of equal size.
double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// Residuals of the four defining pseudoinverse conditions for (L, P):
// LPL=L, PLP=P, (LP)^T=LP, (PL)^T=PL.  Returns the largest residual.
double pseudoinverse_residual(const Eigen::MatrixXd& L, const Eigen::MatrixXd& P);

}  // namespace erq
