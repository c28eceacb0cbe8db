#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "support/generators.hpp"
#include "tmotif/null_models.hpp"

using namespace tmotif;
using tmotif::testing::edges_from;

namespace {

std::map<std::pair<NodeId, NodeId>, int> pair_counts(const EdgeList& el) {
  std::map<std::pair<NodeId, NodeId>, int> out;
  for (const auto& e : el.edges) ++out[{e.src, e.dst}];
  return out;
}

std::vector<Timestamp> times(const EdgeList& el) {
  std::vector<Timestamp> t;
  for (const auto& e : el.edges) t.push_back(e.t);
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace

TEST_CASE("bounded draw stays in range and shuffles uniformly") {
  std::mt19937_64 rng(1);
  for (std::uint64_t bound : {1ULL, 2ULL, 3ULL, 7ULL, 1000ULL, (1ULL << 63) + 5}) {
    for (int i = 0; i < 200; ++i) CHECK(bounded_draw(rng, bound) < bound);
  }
  CHECK_THROWS(bounded_draw(rng, 0));

  std::map<std::array<int, 3>, int> seen;
  for (int i = 0; i < 6000; ++i) {
    std::array<int, 3> a{0, 1, 2};
    seeded_shuffle(std::span<int>(a), rng);
    ++seen[a];
  }
  CHECK(seen.size() == 6);
  for (const auto& [perm, n] : seen) {
    CHECK(n > 850);
    CHECK(n < 1150);
  }
}

TEST_CASE("realization seeds") {
  const ShuffleConfig a{7, 10}, b{7, 3}, c{8, 10};
  CHECK(a.realization_seed(2) == b.realization_seed(2));
  CHECK(a.realization_seed(2) != a.realization_seed(3));
  CHECK(a.realization_seed(0) != c.realization_seed(0));
  CHECK_THROWS_AS((ShuffleConfig{0, 0}.validate()), std::invalid_argument);
}

TEST_CASE("shuffling a single edge is the identity") {
  const auto el = edges_from({{"a", "b", 5}});
  const auto s = shuffle_timestamps(el, 99);
  CHECK(s.edges == el.edges);
}

TEST_CASE("timestamp shuffle invariants") {
  std::mt19937_64 rng(42);
  auto el = tmotif::testing::random_edges(rng, {15, 400, 1000, true});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = shuffle_timestamps(el, seed);
    CHECK(s.size() == el.size());
    CHECK(pair_counts(s) == pair_counts(el));
    CHECK(times(s) == times(el));
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(s.edges[i].seq == i);
      if (i > 0) CHECK(s.edges[i - 1].t <= s.edges[i].t);
    }
    for (Timestamp a : {0, 100, 333}) {
      const Timestamp b = a + 250;
      auto in = [&](const EdgeList& x) {
        return std::count_if(x.edges.begin(), x.edges.end(), [&](const TemporalEdge& e) { return e.t >= a && e.t < b; });
      };
      CHECK(in(s) == in(el));
    }
    const auto again = shuffle_timestamps(el, seed);
    CHECK(again.edges == s.edges);
    const auto twice = shuffle_timestamps(s, seed + 100);
    CHECK(pair_counts(twice) == pair_counts(el));
    CHECK(times(twice) == times(el));
  }
  CHECK_FALSE(shuffle_timestamps(el, 1).edges == shuffle_timestamps(el, 2).edges);
}

TEST_CASE("weights stay with their rows") {
  std::mt19937_64 rng(4);
  const auto el = tmotif::testing::random_edges(rng, {6, 50, 100, false});
  const auto s = shuffle_timestamps(el, 3);
  std::multiset<std::tuple<NodeId, NodeId, double>> before, after;
  for (const auto& e : el.edges) before.insert({e.src, e.dst, *e.w});
  for (const auto& e : s.edges) after.insert({e.src, e.dst, *e.w});
  CHECK(before == after);
}

TEST_CASE("intra-block shuffle") {
  const auto distinct = edges_from({{"a", "b", 1}, {"b", "c", 2}, {"c", "a", 3}});
  CHECK(shuffle_intra_block(distinct, 5).edges == distinct.edges);

  const auto pair = edges_from({{"a", "b", 1}, {"c", "d", 1}});
  std::set<std::string> orders;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto s = shuffle_intra_block(pair, seed);
    CHECK(s.edges == shuffle_intra_block(pair, seed).edges);
    CHECK(s.edges[0].seq == 0);
    CHECK(s.edges[1].seq == 1);
    orders.insert(s.nodes.name(s.edges[0].src));
  }
  CHECK(orders == std::set<std::string>{"a", "c"});
}

TEST_CASE("intra-block shuffle leaves tie-free counts unchanged") {
  std::mt19937_64 rng(11);
  EdgeListBuilder b;
  for (int i = 0; i < 300; ++i) {
    b.add(std::to_string(rng() % 12), std::to_string(12 + rng() % 12), i * 7);
  }
  const auto el = std::move(b).finish();
  const auto rep = intra_block_deviation(el, 100, {3, 5}, 1);
  CHECK(rep.tie_groups == 0);
  CHECK(rep.max_overall == 0);
  for (const auto& m : rep.shuffled) CHECK(m == rep.block_order);
}

TEST_CASE("intra-block deviation on a hand-computed instance") {
  // Same timestamp, delta 0: the only triple is a star whose cell depends on
  // where a->c lands: last M63, middle M41, first M43.
  const auto el = edges_from({{"a", "b", 0}, {"a", "b", 0}, {"a", "c", 0}});
  const ShuffleConfig cfg{2024, 12};
  const auto rep = intra_block_deviation(el, 0, cfg, 1);
  CHECK(rep.block_order.at(6, 3) == 1);
  CHECK(rep.block_order.total() == 1);
  CHECK(rep.tie_groups == 1);
  CHECK(rep.largest_group == 3);

  const NodeId c = *el.nodes.find("c");
  int moved = 0;
  for (std::size_t r = 0; r < cfg.realizations; ++r) {
    const auto s = shuffle_intra_block(el, cfg.realization_seed(r));
    std::size_t pos = 0;
    while (s.edges[pos].dst != c) ++pos;
    const MotifIndex expected = pos == 2 ? MotifIndex{6, 3} : pos == 1 ? MotifIndex{4, 1} : MotifIndex{4, 3};
    CHECK(rep.shuffled[r][expected] == 1);
    CHECK(rep.shuffled[r].total() == 1);
    if (pos != 2) ++moved;
  }
  const std::size_t m63 = MotifIndex{6, 3}.slot();
  CHECK(rep.mean_deviation[m63] == doctest::Approx(moved / 12.0));
  CHECK(rep.max_deviation[m63] == (moved > 0 ? 1.0 : 0.0));
  CHECK(std::isnan(rep.max_deviation[MotifIndex{4, 1}.slot()]));
  CHECK(rep.max_overall == rep.max_deviation[m63]);
  CHECK(moved > 0);
  CHECK(moved < 12);
}

TEST_CASE("null ratio conventions") {
  MotifMatrix real;
  real.delta = 10;
  real.at(1, 1) = 4;
  real.at(1, 2) = 5;
  std::vector<MotifMatrix> nulls(2);
  for (auto& n : nulls) n.delta = 10;
  nulls[0].at(1, 1) = 1;
  nulls[1].at(1, 1) = 3;
  const auto r = null_ratio(real, nulls);
  const auto s11 = MotifIndex{1, 1}.slot();
  CHECK(r.null_mean[s11] == 2.0);
  CHECK(r.null_std[s11] == 1.0);
  CHECK(r.ratio[s11] == 2.0);
  CHECK(std::isinf(r.ratio[MotifIndex{1, 2}.slot()]));
  CHECK(r.ratio[MotifIndex{6, 6}.slot()] == 1.0);
  CHECK(r.realizations == 2);

  const std::vector<MotifMatrix> same(3, real);
  for (double x : null_ratio(real, same).ratio) CHECK(x == 1.0);

  auto off = nulls;
  off[1].delta = 11;
  CHECK_THROWS_AS(null_ratio(real, off), std::invalid_argument);
  CHECK_THROWS_AS(null_ratio(real, std::vector<MotifMatrix>{}), std::invalid_argument);
}

TEST_CASE("null counts are reproducible") {
  std::mt19937_64 rng(9);
  const auto el = tmotif::testing::random_edges(rng, {10, 200, 500, false});
  const ShuffleConfig cfg{5, 3};
  const auto a = null_counts(el, cfg, {{50}, true, 1});
  const auto b = null_counts(el, cfg, {{50}, true, 2});
  REQUIRE(a.size() == 3);
  for (std::size_t r = 0; r < 3; ++r) {
    CHECK(a[r].global == b[r].global);
    CHECK(a[r].local == b[r].local);
  }
}
