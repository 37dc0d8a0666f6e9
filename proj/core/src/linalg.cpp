#include "erq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace erq {

Eigen::MatrixXd laplacian_matrix(const WeightedGraph& g) {
  const int n = g.vertex_count();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    L(e.u, e.u) += e.w;
    L(e.v, e.v) += e.w;
    L(e.u, e.v) -= e.w;
    L(e.v, e.u) -= e.w;
  }
  return L;
}

LaplacianBundle laplacian_bundle(const WeightedGraph& g) {
  const int n = g.vertex_count();
  const int m = g.edge_count();
  LaplacianBundle b;
  b.laplacian = laplacian_matrix(g);
  b.regularized = b.laplacian + Eigen::MatrixXd::Constant(n, n, n > 0 ? 1.0 / n : 0.0);

  if (n == 0) {
    b.pinv.resize(0, 0);
  } else if (g.is_connected()) {
    // For a connected graph L + J/n is positive definite and
    // (L + J/n)^{-1} = L+ + J/n, so the pseudoinverse comes from one solve.
    Eigen::LLT<Eigen::MatrixXd> llt(b.regularized);
    b.pinv = llt.solve(Eigen::MatrixXd::Identity(n, n)) -
             Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  } else {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(b.laplacian);
    b.pinv = cod.pseudoInverse();
  }

  b.incidence = Eigen::MatrixXd::Zero(n, m);
  b.edge_weights.resize(m);
  for (int e = 0; e < m; ++e) {
    const Edge& ed = g.edges()[static_cast<std::size_t>(e)];
    b.incidence(ed.u, e) = -1.0;
    b.incidence(ed.v, e) = 1.0;
    b.edge_weights(e) = ed.w;
  }
  return b;
}

Resistance effective_resistance(const WeightedGraph& g, const LaplacianBundle& lb, int u,
                                int v) {
  if (u == v) throw SameVertex("effective_resistance: u == v");
  if (!g.same_component(u, v)) return Resistance::infinite();
  double r = lb.pinv(u, u) + lb.pinv(v, v) - 2.0 * lb.pinv(u, v);
  return Resistance::finite(r);
}

Resistance effective_resistance(const WeightedGraph& g, int u, int v) {
  if (u < 0 || u >= g.vertex_count() || v < 0 || v >= g.vertex_count())
    throw BadParams("effective_resistance: vertex id out of range");
  if (u == v) throw SameVertex("effective_resistance: u == v");
  if (!g.same_component(u, v)) return Resistance::infinite();
  LaplacianBundle lb = laplacian_bundle(g);
  return effective_resistance(g, lb, u, v);
}

ErMatrix::ErMatrix(int n) : n_(n) {
  if (n < 0) throw BadParams("ErMatrix: negative size");
  cells_.assign(static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2,
                Resistance::infinite());
}

namespace {
std::size_t tri_index(int n, int u, int v) {
  if (u > v) std::swap(u, v);
  return static_cast<std::size_t>(u) * n - static_cast<std::size_t>(u) * (u + 1) / 2 +
         static_cast<std::size_t>(v - u - 1);
}
}  // namespace

Resistance ErMatrix::operator()(int u, int v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_) throw BadParams("ErMatrix: index out of range");
  if (u == v) return Resistance::finite(0.0);
  return cells_[tri_index(n_, u, v)];
}

void ErMatrix::set(int u, int v, Resistance r) {
  if (u < 0 || u >= n_ || v < 0 || v >= n_) throw BadParams("ErMatrix: index out of range");
  if (u == v) throw BadParams("ErMatrix: cannot set a diagonal entry");
  cells_[tri_index(n_, u, v)] = r;
}

bool ErMatrix::all_finite() const {
  return std::all_of(cells_.begin(), cells_.end(),
                     [](const Resistance& r) { return r.is_finite(); });
}

Eigen::MatrixXd ErMatrix::finite_values() const {
  if (!all_finite())
    throw Disconnected("ErMatrix: infinite entries present (graph not connected)");
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(n_, n_);
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v) {
      double x = cells_[tri_index(n_, u, v)].value();
      R(u, v) = x;
      R(v, u) = x;
    }
  return R;
}

ErMatrix all_pairs_er(const WeightedGraph& g) {
  const int n = g.vertex_count();
  ErMatrix R(n);
  LaplacianBundle lb = laplacian_bundle(g);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) R.set(u, v, effective_resistance(g, lb, u, v));
  return R;
}

UnitFlow electrical_flow(const WeightedGraph& g, int source, int sink) {
  const int n = g.vertex_count();
  if (source < 0 || source >= n || sink < 0 || sink >= n)
    throw BadParams("electrical_flow: vertex id out of range");
  if (source == sink) throw SameVertex("electrical_flow: source == sink");
  if (!g.same_component(source, sink))
    throw DisconnectedPair("electrical_flow: no path between source and sink");

  LaplacianBundle lb = laplacian_bundle(g);
  Eigen::VectorXd demand = Eigen::VectorXd::Zero(n);
  demand(source) = 1.0;
  demand(sink) = -1.0;
  Eigen::VectorXd phi = lb.pinv * demand;

  UnitFlow f;
  f.source = source;
  f.sink = sink;
  // Ohm's law per edge, signed in the low-id -> high-id orientation.
  f.edge_flow = -(lb.edge_weights.asDiagonal() * (lb.incidence.transpose() * phi));
  f.energy = 0.0;
  for (int e = 0; e < g.edge_count(); ++e)
    f.energy += f.edge_flow(e) * f.edge_flow(e) / lb.edge_weights(e);
  return f;
}

Eigen::VectorXd flow_divergence(const WeightedGraph& g, const UnitFlow& f) {
  LaplacianBundle lb = laplacian_bundle(g);
  return -(lb.incidence * f.edge_flow);
}

SchurResult schur_complement(const WeightedGraph& g, std::vector<int> keep,
                             double floor_scale) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  const int n = g.vertex_count();
  for (int v : keep)
    if (v < 0 || v >= n) throw BadParams("schur_complement: vertex id out of range");
  if (keep.empty()) throw BadParams("schur_complement: keep set is empty");

  std::vector<char> kept(static_cast<std::size_t>(n), 0);
  for (int v : keep) kept[static_cast<std::size_t>(v)] = 1;
  std::vector<int> rest;
  for (int v = 0; v < n; ++v)
    if (!kept[static_cast<std::size_t>(v)]) rest.push_back(v);

  Eigen::MatrixXd L = laplacian_matrix(g);
  const int k = static_cast<int>(keep.size());
  const int w = static_cast<int>(rest.size());

  Eigen::MatrixXd Luu(k, k), Luw(k, w), Lww(w, w);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) Luu(i, j) = L(keep[static_cast<std::size_t>(i)], keep[static_cast<std::size_t>(j)]);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < w; ++j) Luw(i, j) = L(keep[static_cast<std::size_t>(i)], rest[static_cast<std::size_t>(j)]);
  for (int i = 0; i < w; ++i)
    for (int j = 0; j < w; ++j) Lww(i, j) = L(rest[static_cast<std::size_t>(i)], rest[static_cast<std::size_t>(j)]);

  Eigen::MatrixXd S;
  if (w == 0) {
    S = Luu;
  } else {
    // The grounded block L[W,W] can be singular when a whole component lies
    // inside W, so use a pseudoinverse rather than a plain solve.
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(Lww);
    S = Luu - Luw * cod.pseudoInverse() * Luw.transpose();
  }
  return {laplacian_to_graph(S, floor_scale), std::move(keep)};
}

Eigen::MatrixXd er_to_laplacian_pinv(const Eigen::MatrixXd& R) {
  const int n = static_cast<int>(R.rows());
  if (R.cols() != n) throw BadParams("er_to_laplacian_pinv: matrix not square");
  Eigen::MatrixXd C = Eigen::MatrixXd::Identity(n, n) -
                      Eigen::MatrixXd::Constant(n, n, n > 0 ? 1.0 / n : 0.0);
  return -0.5 * C * R * C;
}

Eigen::MatrixXd pinv_to_laplacian(const Eigen::MatrixXd& pinv) {
  const int n = static_cast<int>(pinv.rows());
  if (pinv.cols() != n) throw BadParams("pinv_to_laplacian: matrix not square");
  if (n == 0) return pinv;
  Eigen::MatrixXd M = pinv + Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  if (!lu.isInvertible())
    throw BadParams("pinv_to_laplacian: input is not the pseudoinverse of a connected Laplacian");
  return lu.inverse() - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
}

WeightedGraph laplacian_to_graph(const Eigen::MatrixXd& L, double floor_scale) {
  const int n = static_cast<int>(L.rows());
  if (L.cols() != n) throw BadParams("laplacian_to_graph: matrix not square");
  double max_diag = 0.0;
  for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(L(i, i)));
  // Weights this far below the diagonal scale are numerical noise, not edges.
  const double floor = floor_scale * max_diag;
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double w = -0.5 * (L(i, j) + L(j, i));
      if (w > floor) edges.push_back({i, j, w});
    }
  return WeightedGraph(n, std::move(edges));
}

double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw BadParams("max_abs_diff: shape mismatch");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double pseudoinverse_residual(const Eigen::MatrixXd& L, const Eigen::MatrixXd& P) {
  if (L.rows() != P.rows() || L.cols() != P.cols() || L.rows() != L.cols())
    throw BadParams("pseudoinverse_residual: shape mismatch");
  if (L.size() == 0) return 0.0;
  Eigen::MatrixXd LP = L * P;
  Eigen::MatrixXd PL = P * L;
  double r = 0.0;
  r = std::max(r, (LP * L - L).cwiseAbs().maxCoeff());
  r = std::max(r, (PL * P - P).cwiseAbs().maxCoeff());
  r = std::max(r, (LP.transpose() - LP).cwiseAbs().maxCoeff());
  r = std::max(r, (PL.transpose() - PL).cwiseAbs().maxCoeff());
  return r;
}

}  // namespace erq
