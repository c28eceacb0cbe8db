#include <random>
#include <set>

#include "doctest.h"
#include "support/generators.hpp"
#include "tmotif/graph.hpp"

using namespace tmotif;
using tmotif::testing::edges_from;

TEST_CASE("pair and node events") {
  const auto el = edges_from({{"a", "b", 0}, {"b", "a", 1}, {"a", "c", 2}});
  const auto g = TemporalGraph::build(el);
  CHECK(g.num_nodes() == 3);
  CHECK(g.num_edges() == 3);
  CHECK(g.num_pairs() == 2);
  const NodeId a = *el.nodes.find("a"), b = *el.nodes.find("b"), c = *el.nodes.find("c");
  CHECK(g.pair_events(*g.find_pair(a, b)).size() == 2);
  CHECK(g.pair_events(*g.find_pair(c, a)).size() == 1);
  CHECK_FALSE(g.find_pair(b, c).has_value());
  CHECK(g.node_events(a).size() == 3);
  CHECK(g.degree(a) == 2);

  const auto ev = g.node_events(a);
  CHECK(ev[0].dir == 0);
  CHECK(ev[1].dir == 1);
  CHECK(ev[1].nbr == b);
  CHECK(g.neighbors(a)[ev[1].nbr_slot] == b);
}

TEST_CASE("empty graph and duplicates") {
  const auto empty = TemporalGraph::build(EdgeList{});
  CHECK(empty.num_nodes() == 0);
  CHECK(empty.num_edges() == 0);
  CHECK(enumerate_static_triangles(empty).size() == 0);

  const auto el = edges_from({{"a", "b", 7}, {"a", "b", 7}});
  const auto g = TemporalGraph::build(el);
  const auto ev = g.pair_events(0);
  REQUIRE(ev.size() == 2);
  CHECK(ev[0].pos < ev[1].pos);
}

TEST_CASE("event list sizes") {
  std::mt19937_64 rng(3);
  const auto g = tmotif::testing::random_graph(rng, {30, 500, 1000, true});
  std::size_t pair_total = 0, node_total = 0;
  for (PairId p = 0; p < g.num_pairs(); ++p) pair_total += g.pair_events(p).size();
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    node_total += g.node_events(u).size();
    const auto ev = g.node_events(u);
    for (std::size_t i = 1; i < ev.size(); ++i) CHECK(ev[i - 1].pos < ev[i].pos);
  }
  CHECK(pair_total == g.num_edges());
  CHECK(node_total == 2 * g.num_edges());
}

TEST_CASE("build rejects unsorted times and self-loops") {
  const std::vector<NodeId> s{0, 1}, d{1, 2};
  const std::vector<Timestamp> t{5, 3};
  CHECK_THROWS_AS(TemporalGraph::build(3, s, d, t), std::invalid_argument);
  const std::vector<NodeId> loop{1, 1};
  const std::vector<Timestamp> ok{1, 2};
  CHECK_THROWS_AS(TemporalGraph::build(3, s, loop, ok), std::invalid_argument);
}

TEST_CASE("static triangles: K4 and star") {
  const auto k4 = edges_from({{"a", "b", 0}, {"a", "c", 0}, {"a", "d", 0}, {"b", "c", 0}, {"b", "d", 0}, {"d", "c", 0}});
  CHECK(enumerate_static_triangles(TemporalGraph::build(k4)).size() == 4);
  const auto star = edges_from({{"a", "b", 0}, {"a", "c", 1}, {"a", "d", 2}});
  CHECK(enumerate_static_triangles(TemporalGraph::build(star)).size() == 0);
}

TEST_CASE("static triangles match brute-force triple check") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 10; ++rep) {
    const auto el = tmotif::testing::random_edges(rng, {20, 60, 100, false});
    const auto g = TemporalGraph::build(el);
    std::set<std::array<NodeId, 3>> expected;
    const auto n = static_cast<NodeId>(g.num_nodes());
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v)
        for (NodeId w = v + 1; w < n; ++w)
          if (g.find_pair(u, v) && g.find_pair(u, w) && g.find_pair(v, w)) expected.insert({u, v, w});

    const auto tris = enumerate_static_triangles(g, 1);
    std::set<std::array<NodeId, 3>> got;
    for (const auto& t : tris.triangles) {
      CHECK(t.u < t.v);
      CHECK(t.v < t.w);
      CHECK(*g.find_pair(t.u, t.v) == t.uv);
      CHECK(*g.find_pair(t.u, t.w) == t.uw);
      CHECK(*g.find_pair(t.v, t.w) == t.vw);
      got.insert({t.u, t.v, t.w});
    }
    CHECK(got.size() == tris.size());
    CHECK(got == expected);
    CHECK(enumerate_static_triangles(g, 3).triangles == tris.triangles);
  }
}

TEST_CASE("reversing every edge keeps the triangle set") {
  std::mt19937_64 rng(8);
  const auto el = tmotif::testing::random_edges(rng, {25, 120, 50, false});
  std::vector<NodeId> s, d;
  std::vector<Timestamp> t;
  for (const auto& e : el.edges) {
    s.push_back(e.src);
    d.push_back(e.dst);
    t.push_back(e.t);
  }
  const auto fwd = TemporalGraph::build(el.nodes.size(), s, d, t);
  const auto rev = TemporalGraph::build(el.nodes.size(), d, s, t);
  const auto a = enumerate_static_triangles(fwd), b = enumerate_static_triangles(rev);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.triangles[i].u == b.triangles[i].u);
    CHECK(a.triangles[i].v == b.triangles[i].v);
    CHECK(a.triangles[i].w == b.triangles[i].w);
  }
}
