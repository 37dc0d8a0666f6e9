#pragma once

#include <optional>
#include <string>

#include "erq/graph.hpp"
#include "erq/oracle.hpp"
#include "erq/tolerance.hpp"

namespace erq {

// Caller-asserted weight class of the hidden graph.  The oracle never leaks
// weights, so decision procedures whose correctness argument needs unit
// weights rely on this assertion.
enum class WeightClass { Unweighted, Weighted };

// Decision plus its certificate.  queries_used is this operation's own
// ledger delta; witness (and witness_value) point at the vertex and queried
// value that exhibit the decision, checkable against the oracle transcript.
struct Verdict {
  bool answer = false;
  std::optional<int> witness;
  std::optional<double> witness_value;
  bool saw_infinite = false;
  std::string note;
  QueryLedger queries_used;
};

// Tree test: all n-1 resistances from vertex 0 finite and integral.
// Exactly n-1 distinct queries.  Integrality is decided in exact rational
// arithmetic when the oracle has that capability, else |R - round(R)| < 1e-6.
Verdict is_tree(ErOracleBase& o, WeightClass wc = WeightClass::Unweighted);

// Equality against a known graph under a monotone weight relation
// (caller guarantees known <= hidden or known >= hidden entrywise).
// True iff the n-1 resistances from vertex 0 agree.  g_known connected.
Verdict equal_monotone(ErOracleBase& o, const WeightedGraph& g_known, Tolerance tol = {});

// Cut-vertex test: true iff some w has R(u0,v) + R(v,w) = R(u0,w) tight,
// with u0 the lowest id != v.  Exactly 2n-3 distinct queries (0 for n = 2).
Verdict is_cut_vertex(ErOracleBase& o, int v, WeightClass wc = WeightClass::Unweighted,
                      double tight_tol = 1e-8);

// Membership in a common biconnected component: false iff some r != a,b is
// tight between them.  Exactly 2n-3 distinct queries.
Verdict same_biconnected_component(ErOracleBase& o, int a, int b,
                                   WeightClass wc = WeightClass::Unweighted,
                                   double tight_tol = 1e-8);

// Cut-edge test (unweighted): true iff R(a,b) = 1 and |R(a,x) - R(b,x)| = 1
// for every other x.  Exactly 2n-3 distinct queries.
Verdict is_cut_edge(ErOracleBase& o, int a, int b,
                    WeightClass wc = WeightClass::Unweighted, double tight_tol = 1e-8);

}  // namespace erq
