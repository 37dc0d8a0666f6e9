#include "erq/oracle.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "erq/errors.hpp"

namespace erq {

ErOracleBase::ErOracleBase(int n, OracleCapabilities caps) : n_(n), caps_(caps) {
  if (n < 0) throw BadParams("oracle: negative vertex count");
}

void ErOracleBase::check_pair(int u, int v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_)
    throw BadParams("oracle: vertex id out of range: " + std::to_string(u) + "," +
                    std::to_string(v));
  if (u == v) throw SameVertex("oracle: query with u == v");
}

std::int64_t ErOracleBase::pair_key(int u, int v) const {
  if (u > v) std::swap(u, v);
  return static_cast<std::int64_t>(u) * n_ + v;
}

Resistance ErOracleBase::er_query(int u, int v) {
  check_pair(u, v);
  std::int64_t key = pair_key(u, v);
  ++ledger_.total;
  auto it = er_cache_.find(key);
  Resistance r;
  if (it != er_cache_.end()) {
    r = it->second;
  } else {
    ++ledger_.distinct;
    r = answer_er(std::min(u, v), std::max(u, v));
    er_cache_.emplace(key, r);
  }
  transcript_.push_back({TranscriptEntry::Kind::Er, std::min(u, v), std::max(u, v), r, {}});
  return r;
}

exact::Rational ErOracleBase::er_query_exact(int u, int v) {
  if (!caps_.exact_rational)
    throw CapabilityError("oracle: exact-rational capability not enabled");
  check_pair(u, v);
  std::int64_t key = pair_key(u, v);
  ++ledger_.total;
  bool fresh = er_cache_.find(key) == er_cache_.end();

  exact::Rational value;
  auto it = exact_cache_.find(key);
  if (it != exact_cache_.end()) {
    value = it->second;
  } else {
    value = answer_er_exact(std::min(u, v), std::max(u, v));
    exact_cache_.emplace(key, value);
  }
  // The float cache mirrors the exact answer so mixed-precision callers see
  // one consistent value per pair, booked once.
  if (fresh) {
    ++ledger_.distinct;
    er_cache_.emplace(key, Resistance::finite(exact::to_double(value)));
  }
  transcript_.push_back({TranscriptEntry::Kind::Er, std::min(u, v), std::max(u, v),
                         er_cache_.at(key), {}});
  return value;
}

std::optional<int> ErOracleBase::sp_query(int u, int v) {
  if (!caps_.shortest_path)
    throw CapabilityError("oracle: shortest-path capability not enabled");
  check_pair(u, v);
  std::int64_t key = pair_key(u, v);
  ++ledger_.sp_total;
  auto it = sp_cache_.find(key);
  std::optional<int> d;
  if (it != sp_cache_.end()) {
    d = it->second;
  } else {
    ++ledger_.sp_distinct;
    d = answer_sp(std::min(u, v), std::max(u, v));
    sp_cache_.emplace(key, d);
  }
  transcript_.push_back({TranscriptEntry::Kind::Sp, std::min(u, v), std::max(u, v),
                         Resistance::infinite(), d});
  return d;
}

const std::vector<std::pair<int, Resistance>>& ErOracleBase::cached_ball_order(int v) {
  if (!caps_.sorted_ball)
    throw CapabilityError("oracle: sorted-ball capability not enabled");
  if (v < 0 || v >= n_) throw BadParams("oracle: vertex id out of range");
  auto it = ball_cache_.find(v);
  if (it == ball_cache_.end()) it = ball_cache_.emplace(v, ball_order(v)).first;
  return it->second;
}

std::vector<std::pair<int, Resistance>> ErOracleBase::sorted_ball_query(int v, int k) {
  const auto& order = cached_ball_order(v);
  if (k < 1 || k > n_ - 1)
    throw BadParams("oracle: ball size k must lie in [1, n-1]");
  ledger_.ball_items += k;
  return {order.begin(), order.begin() + k};
}

std::pair<int, Resistance> ErOracleBase::ball_item(int v, int rank) {
  const auto& order = cached_ball_order(v);
  if (rank < 0 || rank >= static_cast<int>(order.size()))
    throw BadParams("oracle: ball rank out of range");
  ledger_.ball_items += 1;
  return order[static_cast<std::size_t>(rank)];
}

exact::Rational ErOracleBase::answer_er_exact(int, int) {
  throw CapabilityError("oracle: backend has no exact-rational answers");
}

std::optional<int> ErOracleBase::answer_sp(int, int) {
  throw CapabilityError("oracle: backend has no shortest-path answers");
}

std::vector<std::pair<int, Resistance>> ErOracleBase::ball_order(int) {
  throw CapabilityError("oracle: backend has no sorted-ball answers");
}

namespace {

// Sort key: finite resistances ascending, then infinite; ties by vertex id.
void sort_ball(std::vector<std::pair<int, Resistance>>& items) {
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second.is_finite() != b.second.is_finite()) return a.second.is_finite();
    if (a.second.is_finite() && a.second.value() != b.second.value())
      return a.second.value() < b.second.value();
    return a.first < b.first;
  });
}

}  // namespace

ErOracle::ErOracle(WeightedGraph hidden, OracleCapabilities caps)
    : ErOracleBase(hidden.vertex_count(), caps),
      hidden_(std::move(hidden)),
      bundle_(laplacian_bundle(hidden_)),
      hidden_unweighted_(hidden_.is_unweighted()) {
  if (caps.exact_rational)
    exact_solver_ = std::make_unique<exact::ExactResistanceSolver>(hidden_);
}

Resistance ErOracle::answer_er(int u, int v) {
  return effective_resistance(hidden_, bundle_, u, v);
}

exact::Rational ErOracle::answer_er_exact(int u, int v) {
  return exact_solver_->query(u, v);
}

std::optional<int> ErOracle::answer_sp(int u, int v) {
  // Unweighted hop count regardless of edge weights.
  std::vector<int> dist(static_cast<std::size_t>(vertex_count()), -1);
  std::queue<int> q;
  dist[static_cast<std::size_t>(u)] = 0;
  q.push(u);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    if (x == v) break;
    for (const auto& [y, w] : hidden_.neighbors(x)) {
      (void)w;
      if (dist[static_cast<std::size_t>(y)] < 0) {
        dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
        q.push(y);
      }
    }
  }
  int d = dist[static_cast<std::size_t>(v)];
  if (d < 0) return std::nullopt;
  return d;
}

std::vector<std::pair<int, Resistance>> ErOracle::ball_order(int v) {
  std::vector<std::pair<int, Resistance>> items;
  for (int u = 0; u < vertex_count(); ++u) {
    if (u == v) continue;
    items.push_back({u, effective_resistance(hidden_, bundle_, u, v)});
  }
  sort_ball(items);
  return items;
}

TableOracle::TableOracle(int n, std::map<std::pair<int, int>, Resistance> er_table,
                         std::map<std::pair<int, int>, int> sp_table,
                         OracleCapabilities caps)
    : ErOracleBase(n, caps), er_table_(std::move(er_table)), sp_table_(std::move(sp_table)) {}

Resistance TableOracle::answer_er(int u, int v) {
  auto it = er_table_.find({u, v});
  if (it == er_table_.end())
    throw BadParams("table oracle: no entry for pair " + std::to_string(u) + "," +
                    std::to_string(v));
  return it->second;
}

std::optional<int> TableOracle::answer_sp(int u, int v) {
  auto it = sp_table_.find({u, v});
  if (it == sp_table_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<int, Resistance>> TableOracle::ball_order(int v) {
  std::vector<std::pair<int, Resistance>> items;
  for (int u = 0; u < vertex_count(); ++u) {
    if (u == v) continue;
    items.push_back({u, answer_er(std::min(u, v), std::max(u, v))});
  }
  sort_ball(items);
  return items;
}

TableOracle table_oracle_from_graph(const WeightedGraph& g, OracleCapabilities caps) {
  const int n = g.vertex_count();
  ErMatrix R = all_pairs_er(g);
  std::map<std::pair<int, int>, Resistance> er;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) er[{u, v}] = R(u, v);

  std::map<std::pair<int, int>, int> sp;
  if (caps.shortest_path) {
    for (int s = 0; s < n; ++s) {
      std::vector<int> dist(static_cast<std::size_t>(n), -1);
      std::queue<int> q;
      dist[static_cast<std::size_t>(s)] = 0;
      q.push(s);
      while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (const auto& [y, w] : g.neighbors(x)) {
          (void)w;
          if (dist[static_cast<std::size_t>(y)] < 0) {
            dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
            q.push(y);
          }
        }
      }
      for (int t = s + 1; t < n; ++t)
        if (dist[static_cast<std::size_t>(t)] >= 0) sp[{s, t}] = dist[static_cast<std::size_t>(t)];
    }
  }
  return TableOracle(n, std::move(er), std::move(sp), caps);
}

}  // namespace erq
