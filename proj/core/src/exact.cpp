#include "erq/exact.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <utility>

#include "erq/errors.hpp"

namespace erq::exact {

Rational from_double(double x) {
  if (!std::isfinite(x)) throw BadParams("exact: cannot convert a nonfinite double");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  double m = std::frexp(x, &exp);  // x = m * 2^exp with |m| in [0.5, 1)
  auto mantissa = static_cast<std::int64_t>(std::ldexp(m, 53));
  exp -= 53;
  Integer num = mantissa;
  if (exp >= 0) return Rational(num << exp);
  return Rational(num, Integer(1) << (-exp));
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

std::string to_string(const Rational& r) {
  std::string text = boost::multiprecision::numerator(r).str();
  if (!is_integer(r)) text += "/" + boost::multiprecision::denominator(r).str();
  return text;
}

namespace {

using Matrix = std::vector<std::vector<Rational>>;

// Invert an (exactly) nonsingular rational matrix by Gauss-Jordan with
// first-nonzero pivoting.
Matrix invert(Matrix a) {
  const std::size_t n = a.size();
  Matrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw BadParams("exact: matrix is singular");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);

    Rational p = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      Rational f = a[row][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[row][j] -= f * a[col][j];
        inv[row][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

struct ExactResistanceSolver::Impl {
  WeightedGraph g;
  // component id -> (local index per vertex, inverse of L + J/nc)
  std::map<int, std::pair<std::vector<int>, Matrix>> cache;

  explicit Impl(WeightedGraph graph) : g(std::move(graph)) {}

  const std::pair<std::vector<int>, Matrix>& component_inverse(int comp) {
    auto it = cache.find(comp);
    if (it != cache.end()) return it->second;

    std::vector<int> local(static_cast<std::size_t>(g.vertex_count()), -1);
    std::vector<int> members;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (g.component_of(v) == comp) {
        local[static_cast<std::size_t>(v)] = static_cast<int>(members.size());
        members.push_back(v);
      }
    const std::size_t nc = members.size();

    // Regularized Laplacian of the component: L + J/nc, which is
    // nonsingular and satisfies (L + J/nc)^{-1} = L+ + J/nc.
    Matrix a(nc, std::vector<Rational>(nc, Rational(1, static_cast<long>(nc))));
    for (const Edge& e : g.edges()) {
      int lu = local[static_cast<std::size_t>(e.u)];
      int lv = local[static_cast<std::size_t>(e.v)];
      if (lu < 0 || lv < 0) continue;
      Rational w = from_double(e.w);
      a[static_cast<std::size_t>(lu)][static_cast<std::size_t>(lu)] += w;
      a[static_cast<std::size_t>(lv)][static_cast<std::size_t>(lv)] += w;
      a[static_cast<std::size_t>(lu)][static_cast<std::size_t>(lv)] -= w;
      a[static_cast<std::size_t>(lv)][static_cast<std::size_t>(lu)] -= w;
    }
    auto [pos, ok] = cache.emplace(comp, std::pair(std::move(local), invert(std::move(a))));
    (void)ok;
    return pos->second;
  }
};

ExactResistanceSolver::ExactResistanceSolver(const WeightedGraph& g)
    : impl_(std::make_unique<Impl>(g)) {}
ExactResistanceSolver::~ExactResistanceSolver() = default;
ExactResistanceSolver::ExactResistanceSolver(ExactResistanceSolver&&) noexcept = default;
ExactResistanceSolver& ExactResistanceSolver::operator=(ExactResistanceSolver&&) noexcept =
    default;

Rational ExactResistanceSolver::query(int u, int v) {
  const WeightedGraph& g = impl_->g;
  if (u < 0 || u >= g.vertex_count() || v < 0 || v >= g.vertex_count())
    throw BadParams("exact query: vertex id out of range");
  if (u == v) throw SameVertex("exact query: u == v");
  if (!g.same_component(u, v))
    throw DisconnectedPair("exact query: endpoints in different components");

  const auto& [local, inv] = impl_->component_inverse(g.component_of(u));
  auto lu = static_cast<std::size_t>(local[static_cast<std::size_t>(u)]);
  auto lv = static_cast<std::size_t>(local[static_cast<std::size_t>(v)]);
  // The J/nc parts cancel in the quadratic form, leaving exactly R(u,v).
  return inv[lu][lu] + inv[lv][lv] - inv[lu][lv] - inv[lv][lu];
}

Rational effective_resistance_exact(const WeightedGraph& g, int u, int v) {
  ExactResistanceSolver solver(g);
  return solver.query(u, v);
}

}  // namespace erq::exact
