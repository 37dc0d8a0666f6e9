#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "erq/exact.hpp"
#include "erq/graph.hpp"
#include "erq/linalg.hpp"

namespace erq {

// Audit counters for one oracle instance.  All enforced budgets are
// stated on `distinct`; `total` (with repeats) exists for diagnostics.
struct QueryLedger {
  std::int64_t distinct = 0;
  std::int64_t total = 0;
  std::int64_t sp_distinct = 0;
  std::int64_t sp_total = 0;
  std::int64_t ball_items = 0;  // sorted-ball entries consumed

  QueryLedger operator-(const QueryLedger& o) const {
    return {distinct - o.distinct, total - o.total, sp_distinct - o.sp_distinct,
            sp_total - o.sp_total, ball_items - o.ball_items};
  }
  bool operator==(const QueryLedger&) const = default;
};

// One line of the replayable query log.
struct TranscriptEntry {
  enum class Kind { Er, Sp } kind = Kind::Er;
  int u = 0;
  int v = 0;
  Resistance er;            // Kind::Er
  std::optional<int> sp;    // Kind::Sp; nullopt = unreachable
};

struct OracleCapabilities {
  bool shortest_path = false;
  bool sorted_ball = false;
  bool exact_rational = false;
};

// Query interface between inference algorithms and a hidden graph.
// Algorithms must depend on this base class only; the graph itself never
// crosses the interface.  er_query validates, caches, and books queries,
// then delegates to the backend's answer_er.
class ErOracleBase {
 public:
  virtual ~ErOracleBase() = default;

  int vertex_count() const { return n_; }
  const OracleCapabilities& capabilities() const { return caps_; }
  const QueryLedger& ledger() const { return ledger_; }
  const std::vector<TranscriptEntry>& transcript() const { return transcript_; }

  Resistance er_query(int u, int v);
  // Exact-rational answer for the same pair; shares the ER ledger and cache
  // key space with er_query (precision does not change what was asked).
  exact::Rational er_query_exact(int u, int v);
  // Unweighted shortest-path hop count; nullopt across components.
  std::optional<int> sp_query(int u, int v);

  // The k nearest vertices to v in ER order (ties by ascending id,
  // unreachable vertices last).  Books k ball items.
  std::vector<std::pair<int, Resistance>> sorted_ball_query(int v, int k);
  // Single entry of the same ordering; rank is 0-based.  Books one item.
  std::pair<int, Resistance> ball_item(int v, int rank);

 protected:
  ErOracleBase(int n, OracleCapabilities caps);

  virtual Resistance answer_er(int u, int v) = 0;
  virtual exact::Rational answer_er_exact(int u, int v);
  virtual std::optional<int> answer_sp(int u, int v);
  // Full ER ordering of all other vertices around v.
  virtual std::vector<std::pair<int, Resistance>> ball_order(int v);

 private:
  void check_pair(int u, int v) const;
  std::int64_t pair_key(int u, int v) const;
  const std::vector<std::pair<int, Resistance>>& cached_ball_order(int v);

  int n_;
  OracleCapabilities caps_;
  QueryLedger ledger_;
  std::vector<TranscriptEntry> transcript_;
  std::map<std::int64_t, Resistance> er_cache_;
  std::map<std::int64_t, exact::Rational> exact_cache_;
  std::map<std::int64_t, std::optional<int>> sp_cache_;
  std::map<int, std::vector<std::pair<int, Resistance>>> ball_cache_;
};

// Standard oracle over a concrete hidden graph.
class ErOracle final : public ErOracleBase {
 public:
  explicit ErOracle(WeightedGraph hidden, OracleCapabilities caps = {});

  // Construction-time metadata for callers that must assert a weight class;
  // reveals one bit, never the graph.
  bool hidden_is_unweighted() const { return hidden_unweighted_; }

 protected:
  Resistance answer_er(int u, int v) override;
  exact::Rational answer_er_exact(int u, int v) override;
  std::optional<int> answer_sp(int u, int v) override;
  std::vector<std::pair<int, Resistance>> ball_order(int v) override;

 private:
  WeightedGraph hidden_;
  LaplacianBundle bundle_;
  bool hidden_unweighted_;
  std::unique_ptr<exact::ExactResistanceSolver> exact_solver_;
};

// Table-backed test double: answers come from explicit tables, proving that
// algorithm code never touches a graph behind the oracle interface.
class TableOracle final : public ErOracleBase {
 public:
  TableOracle(int n, std::map<std::pair<int, int>, Resistance> er_table,
              std::map<std::pair<int, int>, int> sp_table = {},
              OracleCapabilities caps = {});

 protected:
  Resistance answer_er(int u, int v) override;
  std::optional<int> answer_sp(int u, int v) override;
  std::vector<std::pair<int, Resistance>> ball_order(int v) override;

 private:
  std::map<std::pair<int, int>, Resistance> er_table_;
  std::map<std::pair<int, int>, int> sp_table_;
};

// Builds a table oracle holding the full ER matrix (and hop counts) of g;
// convenient for no-leak substitution tests.
TableOracle table_oracle_from_graph(const WeightedGraph& g, OracleCapabilities caps = {});

}  // namespace erq
