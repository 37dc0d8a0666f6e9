#include <doctest.h>

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "erq/errors.hpp"
#include "erq/generators.hpp"
#include "erq/graph.hpp"
#include "erq/linalg.hpp"
#include "erq/oracle.hpp"
#include "erq/rng.hpp"
#include "support/reference.hpp"

TEST_CASE("repeat queries are answered from cache and booked as repeats") {
  erq::ErOracle o(erq::path_graph(5));
  const double first = o.er_query(0, 4).value();
  CHECK(first == doctest::Approx(4.0));
  CHECK(o.er_query(4, 0).value() == first);  // order-insensitive pair key
  o.er_query(0, 4);
  CHECK(o.ledger().distinct == 1);
  CHECK(o.ledger().total == 3);
  o.er_query(1, 2);
  CHECK(o.ledger().distinct == 2);
  CHECK(o.ledger().total == 4);

  CHECK_THROWS_AS(o.er_query(2, 2), erq::SameVertex);
  CHECK_THROWS_AS(o.er_query(0, 5), erq::BadParams);
  CHECK_THROWS_AS(o.er_query(-1, 2), erq::BadParams);
  CHECK(o.ledger().distinct == 2);  // invalid queries book nothing
}

TEST_CASE("exact queries share the ledger key space with plain queries") {
  erq::ErOracle o(erq::clique_graph(4), {.exact_rational = true});
  o.er_query(0, 1);
  CHECK(erq::exact::to_string(o.er_query_exact(0, 1)) == "1/2");
  CHECK(o.ledger().distinct == 1);  // same pair, no new information
  CHECK(o.ledger().total == 2);
  o.er_query_exact(2, 3);
  CHECK(o.ledger().distinct == 2);
}

TEST_CASE("capability gates reject queries the oracle was not granted") {
  erq::ErOracle plain(erq::path_graph(4));
  CHECK_THROWS_AS(plain.sp_query(0, 3), erq::CapabilityError);
  CHECK_THROWS_AS(plain.ball_item(0, 0), erq::CapabilityError);
  CHECK_THROWS_AS(plain.er_query_exact(0, 1), erq::CapabilityError);

  erq::ErOracle full(erq::path_graph(4),
                     {.shortest_path = true, .sorted_ball = true, .exact_rational = true});
  CHECK(full.sp_query(0, 3) == std::optional<int>(3));
  CHECK(full.ball_item(0, 0).first == 1);
  CHECK(erq::exact::to_string(full.er_query_exact(0, 1)) == "1");
}

TEST_CASE("sorted balls stream in resistance order with ledger accounting") {
  // Star: center 0 at distance 1 from each leaf, leaves at distance 2.
  erq::ErOracle o(erq::star_graph(5), {.sorted_ball = true});
  const auto ball = o.sorted_ball_query(1, 4);
  REQUIRE(ball.size() == 4);
  CHECK(ball[0].first == 0);
  CHECK(ball[0].second.value() == doctest::Approx(1.0));
  // The remaining leaves all sit at resistance 2; their relative order may
  // follow last-ulp noise, so only the membership and sortedness are pinned.
  std::set<int> rest;
  for (std::size_t i = 1; i < ball.size(); ++i) {
    CHECK(ball[i].second.value() == doctest::Approx(2.0));
    CHECK(ball[i].second.value() >= ball[i - 1].second.value());
    rest.insert(ball[i].first);
  }
  CHECK(rest == std::set<int>{2, 3, 4});
  CHECK(o.ledger().ball_items == 4);
  CHECK(o.ledger().distinct == 0);  // ball items are booked separately

  const auto [v, r] = o.ball_item(1, 0);
  CHECK(v == 0);
  CHECK(r.value() == doctest::Approx(1.0));
  CHECK(o.ledger().ball_items == 5);

  erq::WeightedGraph split(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  erq::ErOracle so(std::move(split), {.sorted_ball = true});
  const auto far = so.sorted_ball_query(0, 3);
  CHECK(far[0].first == 1);
  CHECK(far[1].second.is_infinite());  // unreachable vertices sort last
  CHECK(far[2].second.is_infinite());
}

TEST_CASE("shortest-path answers are hop counts with unreachable as nullopt") {
  erq::WeightedGraph two(5, {{0, 1, 1.0}, {1, 2, 1.0}, {3, 4, 1.0}});
  erq::ErOracle o(std::move(two), {.shortest_path = true});
  CHECK(o.sp_query(0, 2) == std::optional<int>(2));
  CHECK(o.sp_query(2, 0) == std::optional<int>(2));
  CHECK_FALSE(o.sp_query(0, 4).has_value());
  CHECK(o.ledger().sp_distinct == 2);
  CHECK(o.ledger().sp_total == 3);
  CHECK(o.ledger().distinct == 0);
}

TEST_CASE("transcripts replay to identical answers and ledgers") {
  erq::Rng rng(67);
  const erq::WeightedGraph hidden = ref::random_connected(rng, 9, 6, 0.5, 2.0);
  erq::ErOracle first(hidden, {.shortest_path = true});
  for (int t = 0; t < 25; ++t) {
    const int u = rng.index(9);
    int v = rng.index(8);
    if (v >= u) ++v;
    if (rng.chance(0.3)) {
      first.sp_query(u, v);
    } else {
      first.er_query(u, v);
    }
  }

  erq::ErOracle second(hidden, {.shortest_path = true});
  for (const auto& entry : first.transcript()) {
    if (entry.kind == erq::TranscriptEntry::Kind::Er) {
      const erq::Resistance r = second.er_query(entry.u, entry.v);
      CHECK(r == entry.er);
    } else {
      CHECK(second.sp_query(entry.u, entry.v) == entry.sp);
    }
  }
  CHECK(second.ledger() == first.ledger());
  CHECK(second.transcript().size() == first.transcript().size());
}

TEST_CASE("table oracle substitutes for the graph-backed oracle") {
  erq::Rng rng(71);
  const erq::WeightedGraph hidden = ref::random_connected(rng, 8, 5, 0.5, 2.0);
  erq::ErOracle real(hidden, {.shortest_path = true, .sorted_ball = true});
  erq::TableOracle fake = erq::table_oracle_from_graph(
      hidden, {.shortest_path = true, .sorted_ball = true});

  for (int u = 0; u < 8; ++u) {
    for (int v = u + 1; v < 8; ++v) {
      CHECK(real.er_query(u, v).value() == doctest::Approx(fake.er_query(u, v).value()));
      CHECK(real.sp_query(u, v) == fake.sp_query(u, v));
    }
    const auto a = real.sorted_ball_query(u, 7);
    const auto b = fake.sorted_ball_query(u, 7);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].first == b[i].first);
  }
  CHECK(real.ledger() == fake.ledger());

  // A bare table with no backing graph still serves queries.
  std::map<std::pair<int, int>, erq::Resistance> table{
      {{0, 1}, erq::Resistance::finite(2.5)},
      {{0, 2}, erq::Resistance::infinite()},
      {{1, 2}, erq::Resistance::infinite()},
  };
  erq::TableOracle bare(3, std::move(table));
  CHECK(bare.er_query(1, 0).value() == doctest::Approx(2.5));
  CHECK(bare.er_query(0, 2).is_infinite());
  CHECK(bare.ledger().distinct == 2);
}

TEST_CASE("oracle answers match the determinant reference on random graphs") {
  erq::Rng rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + rng.index(8);
    const erq::WeightedGraph g = ref::random_connected(rng, n, rng.index(n), 0.5, 2.0);
    erq::ErOracle o(g);
    for (int k = 0; k < 5; ++k) {
      const int u = rng.index(n);
      int v = rng.index(n - 1);
      if (v >= u) ++v;
      CHECK(o.er_query(u, v).value() ==
            doctest::Approx(ref::matrix_tree_er(g, u, v)).epsilon(1e-8));
    }
  }
}
