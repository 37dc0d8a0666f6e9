#include "erq/verify.hpp"

#include <cmath>
#include <vector>

#include "erq/errors.hpp"
#include "erq/linalg.hpp"

namespace erq {

namespace {

constexpr const char* kWeightedNote = "lemma stated for unweighted graphs";

// Issue the full query set before deciding or throwing, so the budget is
// the same for every input.
struct Answers {
  std::vector<Resistance> values;
  bool any_infinite = false;
  int first_infinite_at = -1;

  void add(Resistance r) {
    if (r.is_infinite() && !any_infinite) {
      any_infinite = true;
      first_infinite_at = static_cast<int>(values.size());
    }
    values.push_back(r);
  }
};

}  // namespace

Verdict is_tree(ErOracleBase& o, WeightClass wc) {
  if (wc == WeightClass::Weighted)
    throw WeightedInput("is_tree: the integrality argument needs unit weights");
  const int n = o.vertex_count();
  const bool exact = o.capabilities().exact_rational;
  QueryLedger before = o.ledger();
  Verdict out;
  out.answer = true;

  for (int u = 1; u < n; ++u) {
    if (exact) {
      // Disconnected pairs surface as DisconnectedPair from the exact
      // backend; catch via the float route first.
      Resistance r = o.er_query(0, u);
      if (r.is_infinite()) {
        if (out.answer) {
          out.answer = false;
          out.witness = u;
        }
        continue;
      }
      exact::Rational x = o.er_query_exact(0, u);
      if (!exact::is_integer(x) && out.answer) {
        out.answer = false;
        out.witness = u;
        out.witness_value = exact::to_double(x);
      }
    } else {
      Resistance r = o.er_query(0, u);
      if (r.is_infinite()) {
        if (out.answer) {
          out.answer = false;
          out.witness = u;
        }
      } else if (std::abs(r.value() - std::round(r.value())) >= 1e-6 && out.answer) {
        out.answer = false;
        out.witness = u;
        out.witness_value = r.value();
      }
    }
  }
  out.queries_used = o.ledger() - before;
  return out;
}

Verdict equal_monotone(ErOracleBase& o, const WeightedGraph& g_known, Tolerance tol) {
  const int n = o.vertex_count();
  if (g_known.vertex_count() != n)
    throw BadParams("equal_monotone: vertex counts differ");
  if (!g_known.is_connected()) throw BadParams("equal_monotone: known graph must be connected");
  QueryLedger before = o.ledger();
  LaplacianBundle kb = laplacian_bundle(g_known);

  Verdict out;
  out.answer = true;
  for (int u = 1; u < n; ++u) {
    Resistance hidden = o.er_query(0, u);
    double known = effective_resistance(g_known, kb, 0, u).value();
    if (hidden.is_infinite()) {
      out.saw_infinite = true;
      if (out.answer) {
        out.answer = false;
        out.witness = u;
      }
      continue;
    }
    if (!tol.close(hidden.value(), known) && out.answer) {
      out.answer = false;
      out.witness = u;
      out.witness_value = hidden.value();
    }
  }
  out.queries_used = o.ledger() - before;
  return out;
}

Verdict is_cut_vertex(ErOracleBase& o, int v, WeightClass wc, double tight_tol) {
  const int n = o.vertex_count();
  if (v < 0 || v >= n) throw BadParams("is_cut_vertex: vertex id out of range");
  Verdict out;
  if (wc == WeightClass::Weighted) out.note = kWeightedNote;
  if (n < 3) return out;  // the tightness lemma needs three distinct vertices

  const bool exact = o.capabilities().exact_rational;
  const int u0 = (v == 0) ? 1 : 0;
  QueryLedger before = o.ledger();

  if (exact) {
    Answers probe;
    probe.add(o.er_query(u0, v));
    for (int w = 0; w < n; ++w) {
      if (w == u0 || w == v) continue;
      probe.add(o.er_query(u0, w));
      probe.add(o.er_query(v, w));
    }
    if (probe.any_infinite) {
      out.queries_used = o.ledger() - before;
      throw Disconnected("is_cut_vertex: hidden graph is not connected");
    }
    exact::Rational base = o.er_query_exact(u0, v);
    for (int w = 0; w < n; ++w) {
      if (w == u0 || w == v) continue;
      exact::Rational lhs = base + o.er_query_exact(v, w);
      exact::Rational rhs = o.er_query_exact(u0, w);
      if (lhs == rhs && !out.answer) {
        out.answer = true;
        out.witness = w;
        out.witness_value = 0.0;
      }
    }
    out.queries_used = o.ledger() - before;
    return out;
  }

  Resistance base = o.er_query(u0, v);
  Answers a_u0, a_v;
  std::vector<int> others;
  for (int w = 0; w < n; ++w) {
    if (w == u0 || w == v) continue;
    others.push_back(w);
    a_u0.add(o.er_query(u0, w));
    a_v.add(o.er_query(v, w));
  }
  out.queries_used = o.ledger() - before;
  if (base.is_infinite() || a_u0.any_infinite || a_v.any_infinite)
    throw Disconnected("is_cut_vertex: hidden graph is not connected");

  for (std::size_t i = 0; i < others.size(); ++i) {
    double slack = a_u0.values[i].value() - (base.value() + a_v.values[i].value());
    if (std::abs(slack) <= tight_tol && !out.answer) {
      out.answer = true;
      out.witness = others[i];
      out.witness_value = slack;
    }
  }
  return out;
}

Verdict same_biconnected_component(ErOracleBase& o, int a, int b, WeightClass wc,
                                   double tight_tol) {
  const int n = o.vertex_count();
  if (a < 0 || a >= n || b < 0 || b >= n)
    throw BadParams("same_biconnected_component: vertex id out of range");
  if (a == b) throw SameVertex("same_biconnected_component: a == b");

  Verdict out;
  out.answer = true;
  if (wc == WeightClass::Weighted) out.note = kWeightedNote;
  const bool exact = o.capabilities().exact_rational;
  QueryLedger before = o.ledger();

  Resistance r_ab = o.er_query(a, b);
  Answers a_side, b_side;
  std::vector<int> others;
  for (int r = 0; r < n; ++r) {
    if (r == a || r == b) continue;
    others.push_back(r);
    a_side.add(o.er_query(a, r));
    b_side.add(o.er_query(r, b));
  }
  out.queries_used = o.ledger() - before;
  if (r_ab.is_infinite() || a_side.any_infinite || b_side.any_infinite)
    throw Disconnected("same_biconnected_component: hidden graph is not connected");

  if (exact) {
    exact::Rational base = o.er_query_exact(a, b);
    for (int r : others) {
      if (o.er_query_exact(a, r) + o.er_query_exact(r, b) == base && out.answer) {
        out.answer = false;
        out.witness = r;
        out.witness_value = 0.0;
      }
    }
    out.queries_used = o.ledger() - before;
    return out;
  }

  for (std::size_t i = 0; i < others.size(); ++i) {
    double slack = a_side.values[i].value() + b_side.values[i].value() - r_ab.value();
    if (std::abs(slack) <= tight_tol && out.answer) {
      out.answer = false;
      out.witness = others[i];
      out.witness_value = slack;
    }
  }
  return out;
}

Verdict is_cut_edge(ErOracleBase& o, int a, int b, WeightClass wc, double tight_tol) {
  if (wc == WeightClass::Weighted)
    throw WeightedInput("is_cut_edge: the unit-difference lemma needs unit weights");
  const int n = o.vertex_count();
  if (a < 0 || a >= n || b < 0 || b >= n)
    throw BadParams("is_cut_edge: vertex id out of range");
  if (a == b) throw SameVertex("is_cut_edge: a == b");

  const bool exact = o.capabilities().exact_rational;
  QueryLedger before = o.ledger();
  Resistance r_ab = o.er_query(a, b);
  Answers a_side, b_side;
  std::vector<int> others;
  for (int x = 0; x < n; ++x) {
    if (x == a || x == b) continue;
    others.push_back(x);
    a_side.add(o.er_query(a, x));
    b_side.add(o.er_query(b, x));
  }
  Verdict out;
  out.queries_used = o.ledger() - before;
  if (r_ab.is_infinite() || a_side.any_infinite || b_side.any_infinite)
    throw Disconnected("is_cut_edge: hidden graph is not connected");

  if (exact) {
    out.answer = o.er_query_exact(a, b) == 1;
    if (!out.answer) {
      out.witness_value = r_ab.value();
    } else {
      for (int x : others) {
        exact::Rational diff = o.er_query_exact(a, x) - o.er_query_exact(b, x);
        if (!(diff == 1 || diff == -1)) {
          out.answer = false;
          out.witness = x;
          out.witness_value = exact::to_double(diff);
          break;
        }
      }
    }
    out.queries_used = o.ledger() - before;
    return out;
  }

  out.answer = std::abs(r_ab.value() - 1.0) <= tight_tol;
  if (!out.answer) {
    out.witness_value = r_ab.value();
    return out;
  }
  for (std::size_t i = 0; i < others.size(); ++i) {
    double diff = std::abs(a_side.values[i].value() - b_side.values[i].value());
    if (std::abs(diff - 1.0) > tight_tol) {
      out.answer = false;
      out.witness = others[i];
      out.witness_value = diff;
      break;
    }
  }
  return out;
}

}  // namespace erq
