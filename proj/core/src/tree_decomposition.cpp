#include "erq/tree_decomposition.hpp"

#include <algorithm>
#include <queue>

#include "erq/errors.hpp"

namespace erq {

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& bag : bags) w = std::max(w, static_cast<int>(bag.size()) - 1);
  return w;
}

namespace {

// Connectivity of an induced sub-collection of bags under tree_edges.
bool bags_connected(const TreeDecomposition& td, const std::vector<int>& subset) {
  if (subset.empty()) return true;
  std::vector<char> in(td.bags.size(), 0), seen(td.bags.size(), 0);
  for (int b : subset) in[static_cast<std::size_t>(b)] = 1;
  std::queue<int> q;
  q.push(subset[0]);
  seen[static_cast<std::size_t>(subset[0])] = 1;
  std::size_t reached = 1;
  while (!q.empty()) {
    int b = q.front();
    q.pop();
    for (const auto& [x, y] : td.tree_edges) {
      int other = -1;
      if (x == b) other = y;
      if (y == b) other = x;
      if (other < 0) continue;
      auto o = static_cast<std::size_t>(other);
      if (in[o] && !seen[o]) {
        seen[o] = 1;
        ++reached;
        q.push(other);
      }
    }
  }
  return reached == subset.size();
}

TdCheck check_tree_shape(const TreeDecomposition& td, int n) {
  const int b = td.bag_count();
  if (n > 0 && b == 0) return TdCheck::fail(0, "no bags but the graph has vertices");

  for (const auto& bag : td.bags) {
    for (std::size_t i = 0; i < bag.size(); ++i) {
      if (bag[i] < 0 || bag[i] >= n)
        return TdCheck::fail(0, "bag contains an out-of-range vertex id");
      if (i > 0 && bag[i] <= bag[i - 1])
        return TdCheck::fail(0, "bag is not sorted and duplicate-free");
    }
  }

  if (static_cast<int>(td.tree_edges.size()) != std::max(0, b - 1))
    return TdCheck::fail(0, "bag tree must have exactly (bag count - 1) edges");
  for (const auto& [x, y] : td.tree_edges) {
    if (x < 0 || x >= b || y < 0 || y >= b)
      return TdCheck::fail(0, "tree edge names a missing bag");
    if (x == y) return TdCheck::fail(0, "tree edge is a self-loop");
  }
  if (b > 0) {
    std::vector<int> all(static_cast<std::size_t>(b));
    for (int i = 0; i < b; ++i) all[static_cast<std::size_t>(i)] = i;
    if (!bags_connected(td, all)) return TdCheck::fail(0, "bag tree is not connected");
  }
  return {};
}

TdCheck check_vertex_cover(const TreeDecomposition& td, int n) {
  std::vector<char> covered(static_cast<std::size_t>(n), 0);
  for (const auto& bag : td.bags)
    for (int v : bag) covered[static_cast<std::size_t>(v)] = 1;
  for (int v = 0; v < n; ++v)
    if (!covered[static_cast<std::size_t>(v)])
      return TdCheck::fail(1, "vertex " + std::to_string(v) + " is in no bag");
  return {};
}

TdCheck check_edge_cover(const TreeDecomposition& td, const WeightedGraph& g) {
  for (const Edge& e : g.edges()) {
    bool covered = false;
    for (const auto& bag : td.bags) {
      if (std::binary_search(bag.begin(), bag.end(), e.u) &&
          std::binary_search(bag.begin(), bag.end(), e.v)) {
        covered = true;
        break;
      }
    }
    if (!covered)
      return TdCheck::fail(2, "edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                  "} is covered by no bag");
  }
  return {};
}

TdCheck check_contiguity(const TreeDecomposition& td, int n) {
  for (int v = 0; v < n; ++v) {
    std::vector<int> holding;
    for (int b = 0; b < td.bag_count(); ++b)
      if (std::binary_search(td.bags[static_cast<std::size_t>(b)].begin(),
                             td.bags[static_cast<std::size_t>(b)].end(), v))
        holding.push_back(b);
    if (!bags_connected(td, holding))
      return TdCheck::fail(3, "bags holding vertex " + std::to_string(v) +
                                  " are not connected in the bag tree");
  }
  return {};
}

}  // namespace

TdCheck validate_td_structure(const TreeDecomposition& td, int n) {
  TdCheck c = check_tree_shape(td, n);
  if (!c.valid) return c;
  c = check_vertex_cover(td, n);
  if (!c.valid) return c;
  return check_contiguity(td, n);
}

TdCheck validate_tree_decomposition(const WeightedGraph& g, const TreeDecomposition& td) {
  const int n = g.vertex_count();
  TdCheck c = check_tree_shape(td, n);
  if (!c.valid) return c;
  c = check_vertex_cover(td, n);
  if (!c.valid) return c;
  c = check_edge_cover(td, g);
  if (!c.valid) return c;
  return check_contiguity(td, n);
}

int max_bags_per_vertex(const TreeDecomposition& td, int n) {
  std::vector<int> count(static_cast<std::size_t>(n), 0);
  for (const auto& bag : td.bags)
    for (int v : bag)
      if (v >= 0 && v < n) ++count[static_cast<std::size_t>(v)];
  int best = 0;
  for (int c : count) best = std::max(best, c);
  return best;
}

std::vector<std::vector<int>> bag_hop_distances(const TreeDecomposition& td) {
  const int b = td.bag_count();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(b));
  for (const auto& [x, y] : td.tree_edges) {
    adj[static_cast<std::size_t>(x)].push_back(y);
    adj[static_cast<std::size_t>(y)].push_back(x);
  }
  std::vector<std::vector<int>> dist(static_cast<std::size_t>(b),
                                     std::vector<int>(static_cast<std::size_t>(b), -1));
  for (int s = 0; s < b; ++s) {
    auto& d = dist[static_cast<std::size_t>(s)];
    d[static_cast<std::size_t>(s)] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int y : adj[static_cast<std::size_t>(x)])
        if (d[static_cast<std::size_t>(y)] < 0) {
          d[static_cast<std::size_t>(y)] = d[static_cast<std::size_t>(x)] + 1;
          q.push(y);
        }
    }
  }
  return dist;
}

TreeDecomposition drop_empty_leaf_bags(TreeDecomposition td) {
  for (;;) {
    const int b = td.bag_count();
    std::vector<int> degree(static_cast<std::size_t>(b), 0);
    for (const auto& [x, y] : td.tree_edges) {
      ++degree[static_cast<std::size_t>(x)];
      ++degree[static_cast<std::size_t>(y)];
    }
    int victim = -1;
    for (int i = 0; i < b; ++i)
      if (td.bags[static_cast<std::size_t>(i)].empty() &&
          degree[static_cast<std::size_t>(i)] <= 1 && b > 1) {
        victim = i;
        break;
      }
    if (victim < 0) return td;

    TreeDecomposition next;
    std::vector<int> remap(static_cast<std::size_t>(b), -1);
    for (int i = 0; i < b; ++i) {
      if (i == victim) continue;
      remap[static_cast<std::size_t>(i)] = next.bag_count();
      next.bags.push_back(std::move(td.bags[static_cast<std::size_t>(i)]));
    }
    for (const auto& [x, y] : td.tree_edges) {
      if (x == victim || y == victim) continue;
      next.tree_edges.push_back(
          {remap[static_cast<std::size_t>(x)], remap[static_cast<std::size_t>(y)]});
    }
    td = std::move(next);
  }
}

TreeDecomposition tree_edge_decomposition(const WeightedGraph& tree) {
  const int n = tree.vertex_count();
  if (n == 0) return {};
  if (tree.edge_count() != n - 1 || !tree.is_connected())
    throw BadParams("tree_edge_decomposition: input is not a tree");
  if (n == 1) {
    TreeDecomposition td;
    td.bags.push_back({0});
    return td;
  }

  // Root at 0; bag of v is {v, parent(v)}.
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::queue<int> q;
  q.push(0);
  parent[0] = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (const auto& [u, w] : tree.neighbors(v)) {
      (void)w;
      if (parent[static_cast<std::size_t>(u)] < 0) {
        parent[static_cast<std::size_t>(u)] = v;
        q.push(u);
      }
    }
  }

  TreeDecomposition td;
  std::vector<int> bag_of(static_cast<std::size_t>(n), -1);
  for (int v = 1; v < n; ++v) {
    std::vector<int> bag{v, parent[static_cast<std::size_t>(v)]};
    std::sort(bag.begin(), bag.end());
    bag_of[static_cast<std::size_t>(v)] = td.bag_count();
    td.bags.push_back(std::move(bag));
  }
  // Bags of the root's children hang off the lowest-id child's bag so that
  // the bags containing the root stay connected.
  int anchor = -1;
  for (int v = 1; v < n; ++v) {
    int p = parent[static_cast<std::size_t>(v)];
    if (p != 0) {
      td.tree_edges.push_back(
          {bag_of[static_cast<std::size_t>(v)], bag_of[static_cast<std::size_t>(p)]});
    } else if (anchor < 0) {
      anchor = bag_of[static_cast<std::size_t>(v)];
    } else {
      td.tree_edges.push_back({bag_of[static_cast<std::size_t>(v)], anchor});
    }
  }
  return td;
}

}  // namespace erq
