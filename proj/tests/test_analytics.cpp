#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "support/generators.hpp"
#include "tmotif/analytics.hpp"
#include "tmotif/motif_engine.hpp"

using namespace tmotif;
using tmotif::testing::edges_from;

TEST_CASE("categorize") {
  CHECK(categorize({2, 4}).category == MotifCategory::Triangle);
  CHECK(categorize({2, 4}).cyclic);
  CHECK(categorize({3, 5}).cyclic);
  CHECK(categorize({1, 4}).category == MotifCategory::Triangle);
  CHECK_FALSE(categorize({1, 4}).cyclic);
  CHECK(categorize({6, 1}).category == MotifCategory::TwoNodeSame);
  CHECK(categorize({5, 2}).category == MotifCategory::TwoNodeMixed);
  CHECK_THROWS_AS(categorize({0, 1}), std::out_of_range);

  std::map<MotifCategory, int> sizes;
  int cyclic = 0;
  for (std::size_t s = 0; s < kGlobalCells; ++s) {
    const auto info = categorize(MotifIndex::from_slot(s));
    ++sizes[info.category];
    cyclic += info.cyclic;
  }
  CHECK(sizes[MotifCategory::TwoNodeSame] == 1);
  CHECK(sizes[MotifCategory::TwoNodeMixed] == 3);
  CHECK(sizes[MotifCategory::StarAllIn] == 3);
  CHECK(sizes[MotifCategory::StarAllOut] == 3);
  CHECK(sizes[MotifCategory::StarMixed] == 18);
  CHECK(sizes[MotifCategory::Triangle] == 8);
  CHECK(cyclic == 2);

  CHECK(categorize_local_slot(38) == MotifCategory::TwoNodeSame);
  CHECK(categorize_local_slot(36) == MotifCategory::TwoNodeMixed);
  CHECK_THROWS(categorize_local_slot(40));
  CHECK(category_from_name("star_all_out") == MotifCategory::StarAllOut);
}

TEST_CASE("all-in and all-out stars follow the center's edge directions") {
  // Every star instance whose three edges all point at (away from) the
  // central node must land in the all-in (all-out) category.
  for (int dir = 0; dir < 2; ++dir) {
    for (auto leaves : {std::array<NodeId, 3>{1, 1, 2}, std::array<NodeId, 3>{1, 2, 1}, std::array<NodeId, 3>{2, 1, 1}}) {
      auto e = [&](NodeId leaf) { return dir == 0 ? DirectedEdge{0, leaf} : DirectedEdge{leaf, 0}; };
      const auto cls = classify(e(leaves[0]), e(leaves[1]), e(leaves[2]));
      REQUIRE(cls);
      CHECK(categorize(cls->cell).category == (dir == 0 ? MotifCategory::StarAllOut : MotifCategory::StarAllIn));
    }
  }
}

TEST_CASE("category totals partition the matrix") {
  std::mt19937_64 rng(1);
  const auto m = count_global(tmotif::testing::random_graph(rng, {12, 300, 500, true}), 100);
  const auto t = category_totals(m);
  CHECK(std::accumulate(t.begin(), t.end(), Count{0}) == m.total());
}

TEST_CASE("ccdf") {
  LocalCounts lc;
  lc.per_node.assign(4, LocalMotifVector{});
  const std::size_t tri = MotifIndex{1, 3}.slot();
  lc.per_node[0][tri] = 5;
  lc.per_node[1][tri] = 5;
  lc.per_node[3][tri] = 10;
  const auto c = ccdf(lc, MotifCategory::Triangle);
  REQUIRE(c.size() == 2);
  CHECK(c[0].x == 5);
  CHECK(c[0].p == 1.0);
  CHECK(c[1].x == 10);
  CHECK(c[1].p == doctest::Approx(1.0 / 3));
  CHECK(ccdf(lc, MotifCategory::StarMixed).empty());
}

TEST_CASE("ccdf matches a sort-and-count recomputation") {
  std::mt19937_64 rng(2);
  LocalCounts lc;
  lc.per_node.assign(50, LocalMotifVector{});
  for (auto& v : lc.per_node)
    for (auto& x : v) x = rng() % 4 == 0 ? rng() % 6 : 0;
  for (auto cat : kAllCategories) {
    std::vector<Count> totals;
    for (const auto& v : lc.per_node) {
      Count t = 0;
      for (std::size_t s = 0; s < kLocalSlots; ++s) {
        if (categorize_local_slot(s) == cat) t += v[s];
      }
      if (t > 0) totals.push_back(t);
    }
    const auto c = ccdf(lc, cat);
    std::set<Count> distinct(totals.begin(), totals.end());
    REQUIRE(c.size() == distinct.size());
    std::size_t i = 0;
    for (Count x : distinct) {
      const auto ge = std::count_if(totals.begin(), totals.end(), [&](Count t) { return t >= x; });
      CHECK(c[i].x == x);
      CHECK(c[i].p == doctest::Approx(static_cast<double>(ge) / static_cast<double>(totals.size())));
      if (i > 0) CHECK(c[i].p <= c[i - 1].p);
      ++i;
    }
    if (!c.empty()) CHECK(c.front().p == 1.0);
  }
}

TEST_CASE("signatures against the null distribution") {
  LocalCounts lc;
  lc.per_node.assign(3, LocalMotifVector{});
  std::vector<std::array<double, kLocalSlots>> null(3);
  for (std::size_t s = 0; s < kLocalSlots; ++s) {
    lc.per_node[0][s] = 2 * (s + 1);
    null[0][s] = static_cast<double>(s + 1) / 3.0;
  }
  // Node 1: all mass in slot 4, null uniform over slots 0..4.
  lc.per_node[1][4] = 7;
  for (std::size_t s = 0; s < 5; ++s) null[1][s] = 1.5;

  const auto r = node_signatures(lc, null, 2);
  REQUIRE(r.signatures.size() == 2);
  CHECK_FALSE(r.truncated);
  CHECK(r.signatures[0].node == 0);
  for (double v : r.signatures[0].values) CHECK(v == doctest::Approx(1.0));
  const auto& s1 = r.signatures[1].values;
  CHECK(r.signatures[1].node == 1);
  CHECK(s1[4] == doctest::Approx(5.0));
  for (std::size_t s = 0; s < 4; ++s) CHECK(s1[s] == 0.0);
  for (std::size_t s = 5; s < kLocalSlots; ++s) CHECK(std::isnan(s1[s]));

  const auto all = node_signatures(lc, null, 10);
  CHECK(all.truncated);
  CHECK(all.signatures.size() == 3);
  CHECK_THROWS(node_signatures(lc, null, 0));
}

TEST_CASE("signature ranking ties and scaling") {
  std::mt19937_64 rng(3);
  LocalCounts lc;
  lc.per_node.assign(20, LocalMotifVector{});
  for (auto& v : lc.per_node) v[rng() % kLocalSlots] = rng() % 3;
  std::vector<std::array<double, kLocalSlots>> null(20);
  for (auto& v : null) v.fill(1.0);
  auto scaled = lc;
  for (auto& v : scaled.per_node)
    for (auto& x : v) x *= 7;
  const auto a = node_signatures(lc, null, 8), b = node_signatures(scaled, null, 8);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(a.signatures[i].node == b.signatures[i].node);
    if (i > 0) {
      const auto& p = a.signatures[i - 1];
      const auto& q = a.signatures[i];
      CHECK((p.total > q.total || (p.total == q.total && p.node < q.node)));
    }
  }
}

TEST_CASE("mean of null local counts") {
  LocalCounts a, b;
  a.per_node.assign(2, LocalMotifVector{});
  b.per_node.assign(2, LocalMotifVector{});
  a.per_node[1][3] = 3;
  b.per_node[1][3] = 6;
  const std::vector<LocalCounts> runs{a, b};
  const auto m = mean_local_counts(runs);
  CHECK(m[1][3] == 4.5);
  CHECK(m[0][3] == 0.0);
}

TEST_CASE("balances") {
  EdgeListBuilder one;
  one.add("a", "b", 0, 5.0);
  const auto el = std::move(one).finish();
  const auto b = balances(el);
  CHECK(b.records[*el.nodes.find("a")].balance == -5.0);
  CHECK(b.records[*el.nodes.find("b")].balance == 5.0);
  CHECK(b.missing_weights == 0);

  const auto unweighted = balances(edges_from({{"a", "b", 0}}));
  CHECK(unweighted.missing_weights == 1);
  CHECK(unweighted.records[0].balance == 0.0);
}

TEST_CASE("balances match a naive two-pass accumulation") {
  std::mt19937_64 rng(4);
  const auto el = tmotif::testing::random_edges(rng, {15, 100, 100, false});
  const auto b = balances(el);
  double total = 0;
  for (NodeId u = 0; u < el.nodes.size(); ++u) {
    double in = 0, out = 0;
    Count tx = 0;
    for (const auto& e : el.edges) {
      if (e.dst == u) {
        in += *e.w;
        ++tx;
      }
    }
    for (const auto& e : el.edges) {
      if (e.src == u) {
        out += *e.w;
        ++tx;
      }
    }
    CHECK(b.records[u].inflow == doctest::Approx(in));
    CHECK(b.records[u].outflow == doctest::Approx(out));
    CHECK(b.records[u].tx_count == tx);
    total += b.records[u].balance;
  }
  CHECK(std::abs(total) < 1e-9);
}

TEST_CASE("scatter rows") {
  const auto single = edges_from({{"a", "b", 0}});
  const auto rows = scatter_data(count_local(TemporalGraph::build(single), 10), balances(single));
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) CHECK(r.motif_total == 0);

  const auto star = edges_from({{"a", "b", 0}, {"a", "c", 1}, {"a", "b", 2}});
  const auto srows = scatter_data(count_local(TemporalGraph::build(star), 2), balances(star));
  REQUIRE(srows.size() == 3);
  for (const auto& r : srows) CHECK(r.motif_total == (star.nodes.name(r.node) == "a" ? 1u : 0u));

  std::mt19937_64 rng(5);
  auto el = tmotif::testing::random_edges(rng, {30, 20, 10, false});
  // Extra names with no transactions.
  el.nodes.intern("idle1");
  el.nodes.intern("idle2");
  const auto lc_nodes = el.nodes.size();
  LocalCounts lc;
  lc.per_node.assign(lc_nodes, LocalMotifVector{});
  const auto bal = balances(el);
  const auto r = scatter_data(lc, bal);
  const auto active = std::count_if(bal.records.begin(), bal.records.end(), [](const BalanceRecord& x) { return x.tx_count > 0; });
  CHECK(static_cast<std::ptrdiff_t>(r.size()) == active);
  LocalCounts wrong;
  wrong.per_node.resize(1);
  CHECK_THROWS_AS(scatter_data(wrong, bal), std::invalid_argument);
}
