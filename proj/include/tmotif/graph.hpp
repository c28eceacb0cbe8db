#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "tmotif/ingest.hpp"
#include "tmotif/types.hpp"

namespace tmotif {

/// One transaction on an unordered pair. `dir` is 0 when it goes from the
/// lower to the higher node id.
struct PairEvent {
  Timestamp t;
  EdgePos pos;
  std::uint8_t dir;
};

/// One transaction seen from an endpoint. `dir` is 0 for outgoing, 1 for
/// incoming; `nbr_slot` indexes the neighbor in `neighbors(node)`.
struct NodeEvent {
  Timestamp t;
  EdgePos pos;
  NodeId nbr;
  std::uint32_t nbr_slot;
  std::uint8_t dir;
};

/// Immutable temporal graph indexes. All event lists are sorted by edge
/// position, i.e. by (t, seq).
class TemporalGraph {
 public:
  TemporalGraph() = default;
  static TemporalGraph build(const EdgeList& edges);
  /// Builds from dense ids directly; rows must already be sorted by (t, order).
  static TemporalGraph build(std::size_t num_nodes, std::span<const NodeId> src, std::span<const NodeId> dst,
                             std::span<const Timestamp> t);

  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t num_edges() const { return edge_t_.size(); }
  std::size_t num_pairs() const { return pair_lo_.size(); }

  NodeId edge_src(EdgePos e) const { return edge_src_[e]; }
  NodeId edge_dst(EdgePos e) const { return edge_dst_[e]; }
  Timestamp edge_time(EdgePos e) const { return edge_t_[e]; }
  std::span<const NodeId> edge_sources() const { return edge_src_; }
  std::span<const NodeId> edge_targets() const { return edge_dst_; }
  std::span<const Timestamp> edge_times() const { return edge_t_; }

  NodeId pair_lo(PairId p) const { return pair_lo_[p]; }
  NodeId pair_hi(PairId p) const { return pair_hi_[p]; }
  std::span<const PairEvent> pair_events(PairId p) const {
    return {pair_events_.data() + pair_offsets_[p], pair_events_.data() + pair_offsets_[p + 1]};
  }

  std::span<const NodeEvent> node_events(NodeId u) const {
    return {node_events_.data() + node_event_offsets_[u], node_events_.data() + node_event_offsets_[u + 1]};
  }
  /// Sorted, deduplicated undirected neighbors.
  std::span<const NodeId> neighbors(NodeId u) const {
    return {adj_.data() + adj_offsets_[u], adj_.data() + adj_offsets_[u + 1]};
  }
  /// Pair ids aligned with `neighbors(u)`.
  std::span<const PairId> neighbor_pairs(NodeId u) const {
    return {adj_pairs_.data() + adj_offsets_[u], adj_pairs_.data() + adj_offsets_[u + 1]};
  }
  std::size_t degree(NodeId u) const { return adj_offsets_[u + 1] - adj_offsets_[u]; }
  std::optional<PairId> find_pair(NodeId u, NodeId v) const;

 private:
  std::size_t num_nodes_ = 0;
  std::vector<NodeId> edge_src_, edge_dst_;
  std::vector<Timestamp> edge_t_;

  std::vector<NodeId> pair_lo_, pair_hi_;
  std::vector<std::size_t> pair_offsets_{0};
  std::vector<PairEvent> pair_events_;

  std::vector<std::size_t> node_event_offsets_{0};
  std::vector<NodeEvent> node_events_;

  std::vector<std::size_t> adj_offsets_{0};
  std::vector<NodeId> adj_;
  std::vector<PairId> adj_pairs_;
};

/// Static triangle u < v < w with the pair ids of its three sides.
struct StaticTriangle {
  NodeId u, v, w;
  PairId uv, uw, vw;
  friend bool operator==(const StaticTriangle&, const StaticTriangle&) = default;
};

struct StaticTriangleSet {
  /// Sorted by (u, v, w).
  std::vector<StaticTriangle> triangles;
  std::size_t size() const { return triangles.size(); }
};

/// Lists every node triple whose three pairs all carry a transaction.
/// Degree-ordered forward enumeration; `threads` <= 0 uses the default.
StaticTriangleSet enumerate_static_triangles(const TemporalGraph& g, int threads = 0);

/// Versioned binary snapshot of an edge list (node table + sorted edges),
/// see README for the layout.
void save_snapshot(std::ostream& out, const EdgeList& edges);
EdgeList load_snapshot(std::istream& in);

}  // namespace tmotif
