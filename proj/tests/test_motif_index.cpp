#include <stdexcept>

#include "doctest.h"
#include "tmotif/motif_index.hpp"

using namespace tmotif;

namespace {

DirectedEdge star_edge(NodeId center, NodeId leaf, int dir) {
  return dir == 0 ? DirectedEdge{center, leaf} : DirectedEdge{leaf, center};
}

NodeId node_of(Role r, DirectedEdge e1, NodeId z) {
  return r == Role::X ? e1.src : r == Role::Y ? e1.dst : z;
}

}  // namespace

TEST_CASE("slots round trip") {
  for (std::size_t s = 0; s < kGlobalCells; ++s) CHECK(MotifIndex::from_slot(s).slot() == s);
  CHECK(MotifIndex{1, 1}.slot() == 0);
  CHECK(MotifIndex{6, 6}.slot() == 35);
  CHECK_FALSE(MotifIndex{0, 3}.valid());
  CHECK_THROWS_AS(shape_of(MotifIndex{7, 1}), std::out_of_range);
}

TEST_CASE("shape partition of the grid") {
  int two = 0, star = 0, tri = 0;
  for (std::size_t s = 0; s < kGlobalCells; ++s) {
    switch (shape_of(MotifIndex::from_slot(s))) {
      case MotifShape::TwoNode: ++two; break;
      case MotifShape::Star: ++star; break;
      case MotifShape::Triangle: ++tri; break;
    }
  }
  CHECK(two == 4);
  CHECK(star == 24);
  CHECK(tri == 8);
}

TEST_CASE("cyclic triangles sit at M24 and M35") {
  const DirectedEdge ab{0, 1}, bc{1, 2}, ca{2, 0};
  auto c1 = classify(ab, bc, ca);
  REQUIRE(c1);
  CHECK(c1->cell == MotifIndex{2, 4});
  CHECK(c1->shape == MotifShape::Triangle);
  auto c2 = classify(ab, ca, bc);
  REQUIRE(c2);
  CHECK(c2->cell == MotifIndex{3, 5});
}

TEST_CASE("three same-direction edges are M61") {
  auto c = classify({0, 1}, {0, 1}, {0, 1});
  REQUIRE(c);
  CHECK(c->cell == MotifIndex{6, 1});
  CHECK(c->shape == MotifShape::TwoNode);
}

TEST_CASE("unclassifiable triples") {
  CHECK_FALSE(classify({0, 1}, {2, 3}, {0, 2}).has_value());
  CHECK_FALSE(classify({0, 1}, {1, 2}, {2, 3}).has_value());
  CHECK_FALSE(classify({0, 0}, {0, 1}, {0, 1}).has_value());
}

TEST_CASE("star tables agree with role classification") {
  const NodeId c = 5, shared = 7, other = 9;
  for (int d1 = 0; d1 < 2; ++d1)
    for (int d2 = 0; d2 < 2; ++d2)
      for (int d3 = 0; d3 < 2; ++d3) {
        CAPTURE(d1);
        CAPTURE(d2);
        CAPTURE(d3);
        struct Config {
          const char* name;
          const std::array<std::array<std::array<MotifIndex, 2>, 2>, 2>& table;
          NodeId l1, l2, l3;
        };
        const Config configs[] = {{"pre", kStarPre, shared, shared, other},
                                  {"mid", kStarMid, shared, other, shared},
                                  {"pos", kStarPos, other, shared, shared}};
        for (const auto& cfg : configs) {
          CAPTURE(cfg.name);
          const auto e1 = star_edge(c, cfg.l1, d1);
          const auto cls = classify(e1, star_edge(c, cfg.l2, d2), star_edge(c, cfg.l3, d3));
          REQUIRE(cls);
          CHECK(cls->shape == MotifShape::Star);
          CHECK(cls->cell == cfg.table[d1][d2][d3]);
          NodeId z = c;
          for (NodeId n : {c, shared, other}) {
            if (n != e1.src && n != e1.dst) z = n;
          }
          CHECK(node_of(cls->center, e1, z) == c);
        }
      }
}

TEST_CASE("all 24 star cells are reached exactly once by the tables") {
  std::array<int, kGlobalCells> hits{};
  for (const auto* t : {&kStarPre, &kStarMid, &kStarPos})
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c) ++hits[(*t)[a][b][c].slot()];
  for (std::size_t s = 0; s < kGlobalCells; ++s) {
    CHECK(hits[s] == (shape_of(MotifIndex::from_slot(s)) == MotifShape::Star ? 1 : 0));
  }
}

TEST_CASE("two-node table agrees with role classification") {
  for (int d1 = 0; d1 < 2; ++d1)
    for (int d2 = 0; d2 < 2; ++d2)
      for (int d3 = 0; d3 < 2; ++d3) {
        auto e = [](int d) { return d == 0 ? DirectedEdge{3, 4} : DirectedEdge{4, 3}; };
        const auto cls = classify(e(d1), e(d2), e(d3));
        REQUIRE(cls);
        CHECK(cls->cell == two_node_cell(d1, d2, d3));
      }
}

TEST_CASE("reversed local slots") {
  CHECK(reversed_two_node_slot(MotifIndex{5, 1}) == 36);
  CHECK(reversed_two_node_slot(MotifIndex{6, 2}) == 39);
  CHECK_THROWS(reversed_two_node_slot(MotifIndex{1, 1}));
  for (std::size_t s = 36; s < 40; ++s) CHECK(reversed_two_node_slot(grid_cell_of_local_slot(s)) == s);
  for (std::size_t s = 0; s < 36; ++s) CHECK(grid_cell_of_local_slot(s).slot() == s);
}

TEST_CASE("cell descriptions") {
  CHECK(describe_cell(MotifIndex{6, 1}) == "X->Y, X->Y, X->Y");
  CHECK(describe_cell(MotifIndex{2, 4}) == "X->Y, Y->Z, Z->X");
}
