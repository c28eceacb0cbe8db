#pragma once

// The 6x6 grid of 3-edge, up-to-3-node temporal motifs.
//
// Every instance is read with roles X, Y, Z: the first edge is X->Y and Z is
// the third node, named when it first appears. The second edge picks the row
// and the third edge picks the column:
//
//   row  second edge      col  third edge
//    1   Z->Y              1   X->Y
//    2   Y->Z              2   Y->X
//    3   Z->X              3   X->Z
//    4   X->Z              4   Z->X
//    5   Y->X              5   Y->Z
//    6   X->Y              6   Z->Y
//
// Rows 5-6 x columns 1-2 are the two-node motifs, M_{1..2,3..4} and
// M_{3..4,5..6} are triangles, everything else is a star.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tmotif/types.hpp"

namespace tmotif {

inline constexpr std::size_t kGridSize = 6;
inline constexpr std::size_t kGlobalCells = 36;
inline constexpr std::size_t kLocalSlots = 40;

/// 1-based (row, column) address of a global motif cell.
struct MotifIndex {
  int row = 1;
  int col = 1;

  constexpr bool valid() const { return row >= 1 && row <= 6 && col >= 1 && col <= 6; }
  /// Row-major slot in [0, 36).
  constexpr std::size_t slot() const { return static_cast<std::size_t>((row - 1) * 6 + (col - 1)); }
  static constexpr MotifIndex from_slot(std::size_t s) {
    return MotifIndex{static_cast<int>(s / 6) + 1, static_cast<int>(s % 6) + 1};
  }
  friend constexpr bool operator==(MotifIndex, MotifIndex) = default;
};

enum class MotifShape { TwoNode, Star, Triangle };

MotifShape shape_of(MotifIndex idx);

/// Local slots 36..39 hold the two-node motifs seen from the node receiving
/// the first edge: reversed M_{5,1}, M_{5,2}, M_{6,1}, M_{6,2} in that order.
inline constexpr std::size_t kReversedM51 = 36;
inline constexpr std::size_t kReversedM52 = 37;
inline constexpr std::size_t kReversedM61 = 38;
inline constexpr std::size_t kReversedM62 = 39;

/// Reversed-perspective local slot for a two-node grid cell.
std::size_t reversed_two_node_slot(MotifIndex two_node_cell);

/// Grid cell that local slot `slot` refers to (36..39 map back to their
/// pictured two-node cell).
MotifIndex grid_cell_of_local_slot(std::size_t slot);

struct MotifMatrix {
  std::array<Count, kGlobalCells> counts{};
  Seconds delta = 0;

  Count& at(int row, int col) { return counts[MotifIndex{row, col}.slot()]; }
  Count at(int row, int col) const { return counts[MotifIndex{row, col}.slot()]; }
  Count& operator[](MotifIndex idx) { return counts[idx.slot()]; }
  Count operator[](MotifIndex idx) const { return counts[idx.slot()]; }

  Count total() const;
  MotifMatrix& operator+=(const MotifMatrix& other);
  /// Elementwise <=.
  bool dominated_by(const MotifMatrix& other) const;

  friend bool operator==(const MotifMatrix&, const MotifMatrix&) = default;
};

using LocalMotifVector = std::array<Count, kLocalSlots>;

/// Per-node local counts, indexed by dense node id.
struct LocalCounts {
  Seconds delta = 0;
  std::vector<LocalMotifVector> per_node;

  std::size_t num_nodes() const { return per_node.size(); }
  friend bool operator==(const LocalCounts&, const LocalCounts&) = default;
};

/// Which node of an instance is credited for a star.
enum class Role : std::uint8_t { X = 0, Y = 1, Z = 2 };

struct Classification {
  MotifIndex cell;
  MotifShape shape = MotifShape::TwoNode;
  /// Star center role (stars only).
  Role center = Role::X;
};

struct DirectedEdge {
  NodeId src;
  NodeId dst;
};

/// Classify an ordered edge triple. Returns nullopt when the edges span more
/// than three nodes (or an edge is a self-loop).
std::optional<Classification> classify(DirectedEdge e1, DirectedEdge e2, DirectedEdge e3);

// Star cells by configuration and direction triple, from the center's view
// (0 = outgoing from the center, 1 = incoming). `pre`: edges 1 and 2 share a
// leaf; `mid`: edges 1 and 3 share a leaf; `pos`: edges 2 and 3 share a leaf.
extern const std::array<std::array<std::array<MotifIndex, 2>, 2>, 2> kStarPre;
extern const std::array<std::array<std::array<MotifIndex, 2>, 2>, 2> kStarMid;
extern const std::array<std::array<std::array<MotifIndex, 2>, 2>, 2> kStarPos;

/// Two-node cell for a direction triple of one pair (0/1 = either direction).
MotifIndex two_node_cell(int d1, int d2, int d3);

/// One-line description of a cell's edge pattern, e.g. "X->Y, Z->Y, Z->Y".
std::string describe_cell(MotifIndex idx);

}  // namespace tmotif
