#include "tmotif/motif_index.hpp"

#include <numeric>
#include <stdexcept>

namespace tmotif {

namespace {

using StarTable = std::array<std::array<std::array<MotifIndex, 2>, 2>, 2>;

constexpr MotifIndex M(int r, int c) { return MotifIndex{r, c}; }

// Role pairs (src, dst) of the second edge, in row order.
constexpr std::array<std::array<Role, 2>, 6> kRowEdge{{
    {Role::Z, Role::Y},
    {Role::Y, Role::Z},
    {Role::Z, Role::X},
    {Role::X, Role::Z},
    {Role::Y, Role::X},
    {Role::X, Role::Y},
}};

// Role pairs of the third edge, in column order.
constexpr std::array<std::array<Role, 2>, 6> kColEdge{{
    {Role::X, Role::Y},
    {Role::Y, Role::X},
    {Role::X, Role::Z},
    {Role::Z, Role::X},
    {Role::Y, Role::Z},
    {Role::Z, Role::Y},
}};

const char* role_name(Role r) {
  switch (r) {
    case Role::X: return "X";
    case Role::Y: return "Y";
    case Role::Z: return "Z";
  }
  return "?";
}

}  // namespace

const StarTable kStarPre = {{
    {{{M(6, 3), M(6, 4)}, {M(5, 3), M(5, 4)}}},
    {{{M(5, 5), M(5, 6)}, {M(6, 5), M(6, 6)}}},
}};

const StarTable kStarMid = {{
    {{{M(4, 1), M(4, 2)}, {M(3, 1), M(3, 2)}}},
    {{{M(2, 2), M(2, 1)}, {M(1, 2), M(1, 1)}}},
}};

const StarTable kStarPos = {{
    {{{M(4, 3), M(4, 4)}, {M(3, 3), M(3, 4)}}},
    {{{M(2, 5), M(2, 6)}, {M(1, 5), M(1, 6)}}},
}};

MotifShape shape_of(MotifIndex idx) {
  if (!idx.valid()) throw std::out_of_range("motif index out of range");
  if (idx.row >= 5 && idx.col <= 2) return MotifShape::TwoNode;
  if (idx.row <= 2 && (idx.col == 3 || idx.col == 4)) return MotifShape::Triangle;
  if ((idx.row == 3 || idx.row == 4) && idx.col >= 5) return MotifShape::Triangle;
  return MotifShape::Star;
}

std::size_t reversed_two_node_slot(MotifIndex cell) {
  if (cell == M(5, 1)) return kReversedM51;
  if (cell == M(5, 2)) return kReversedM52;
  if (cell == M(6, 1)) return kReversedM61;
  if (cell == M(6, 2)) return kReversedM62;
  throw std::invalid_argument("not a two-node motif cell");
}

MotifIndex grid_cell_of_local_slot(std::size_t slot) {
  switch (slot) {
    case kReversedM51: return M(5, 1);
    case kReversedM52: return M(5, 2);
    case kReversedM61: return M(6, 1);
    case kReversedM62: return M(6, 2);
    default: break;
  }
  if (slot >= kGlobalCells) throw std::out_of_range("local slot out of range");
  return MotifIndex::from_slot(slot);
}

MotifIndex two_node_cell(int d1, int d2, int d3) {
  const bool second_same = d2 == d1;
  const bool third_same = d3 == d1;
  if (second_same) return third_same ? M(6, 1) : M(6, 2);
  return third_same ? M(5, 1) : M(5, 2);
}

Count MotifMatrix::total() const {
  return std::accumulate(counts.begin(), counts.end(), Count{0});
}

MotifMatrix& MotifMatrix::operator+=(const MotifMatrix& other) {
  for (std::size_t i = 0; i < kGlobalCells; ++i) counts[i] += other.counts[i];
  return *this;
}

bool MotifMatrix::dominated_by(const MotifMatrix& other) const {
  for (std::size_t i = 0; i < kGlobalCells; ++i) {
    if (counts[i] > other.counts[i]) return false;
  }
  return true;
}

std::optional<Classification> classify(DirectedEdge e1, DirectedEdge e2, DirectedEdge e3) {
  if (e1.src == e1.dst || e2.src == e2.dst || e3.src == e3.dst) return std::nullopt;
  std::array<NodeId, 3> nodes{e1.src, e1.dst, kInvalidNode};
  int known = 2;

  // Role of a node, naming Z on first sight; nullopt when a fourth node shows up.
  auto role_of = [&](NodeId v) -> std::optional<Role> {
    for (int i = 0; i < known; ++i) {
      if (nodes[i] == v) return static_cast<Role>(i);
    }
    if (known == 3) return std::nullopt;
    nodes[known] = v;
    return static_cast<Role>(known++);
  };

  auto r2s = role_of(e2.src);
  auto r2d = role_of(e2.dst);
  if (!r2s || !r2d) return std::nullopt;
  auto r3s = role_of(e3.src);
  auto r3d = role_of(e3.dst);
  if (!r3s || !r3d) return std::nullopt;

  int row = 0;
  for (int i = 0; i < 6; ++i) {
    if (kRowEdge[i][0] == *r2s && kRowEdge[i][1] == *r2d) row = i + 1;
  }
  int col = 0;
  for (int i = 0; i < 6; ++i) {
    if (kColEdge[i][0] == *r3s && kColEdge[i][1] == *r3d) col = i + 1;
  }
  if (row == 0 || col == 0) return std::nullopt;

  Classification out;
  out.cell = MotifIndex{row, col};
  out.shape = shape_of(out.cell);
  if (out.shape == MotifShape::Star) {
    // The center is the one role touched by all three edges.
    for (Role r : {Role::X, Role::Y, Role::Z}) {
      auto touches = [r](Role a, Role b) { return a == r || b == r; };
      if (touches(Role::X, Role::Y) && touches(*r2s, *r2d) && touches(*r3s, *r3d)) {
        out.center = r;
        break;
      }
    }
  }
  return out;
}

std::string describe_cell(MotifIndex idx) {
  if (!idx.valid()) throw std::out_of_range("motif index out of range");
  const auto& e2 = kRowEdge[idx.row - 1];
  const auto& e3 = kColEdge[idx.col - 1];
  std::string s = "X->Y, ";
  s += role_name(e2[0]);
  s += "->";
  s += role_name(e2[1]);
  s += ", ";
  s += role_name(e3[0]);
  s += "->";
  s += role_name(e3[1]);
  return s;
}

}  // namespace tmotif
