#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <memory>
#include <string>
#include <vector>

#include "erq/graph.hpp"

namespace erq::exact {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// Exact binary expansion of a finite double.
Rational from_double(double x);
double to_double(const Rational& r);
bool is_integer(const Rational& r);
// Canonical "numerator/denominator" text ("p" when the denominator is 1).
std::string to_string(const Rational& r);

// Exact effective resistances over rational arithmetic.  Each connected
// component's regularized Laplacian is inverted once (lazily, on first use)
// with rational Gauss-Jordan elimination; queries after that are O(1).
// Intended for modest sizes (n up to about 100).
class ExactResistanceSolver {
 public:
  explicit ExactResistanceSolver(const WeightedGraph& g);
  ~ExactResistanceSolver();
  ExactResistanceSolver(ExactResistanceSolver&&) noexcept;
  ExactResistanceSolver& operator=(ExactResistanceSolver&&) noexcept;

  // Throws SameVertex on u == v and DisconnectedPair across components.
  Rational query(int u, int v);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// One-shot convenience wrapper around ExactResistanceSolver.
Rational effective_resistance_exact(const WeightedGraph& g, int u, int v);

}  // namespace erq::exact
