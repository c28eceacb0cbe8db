#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tmotif/graph.hpp"
#include "tmotif/motif_index.hpp"

namespace tmotif {

/// Wall-clock split of one counting run, in seconds.
struct CountTimings {
  double triangle_enumeration = 0;
  double two_node = 0;
  double stars = 0;
  double triangles = 0;
  /// How many times static triangles were enumerated (1 per run).
  int triangle_enumerations = 0;
  std::size_t static_triangles = 0;

  double total() const { return triangle_enumeration + two_node + stars + triangles; }
};

struct CountRequest {
  /// Ascending, non-negative, strictly increasing.
  std::vector<Seconds> deltas;
  bool local = false;
  int threads = 0;
};

struct CountResult {
  std::vector<MotifMatrix> global;
  /// Filled only when local counts were requested.
  std::vector<LocalCounts> local;
  CountTimings timings;
};

/// Counts all 36 global (and optionally 40 local) motif types for every
/// delta in one pass over the graph's units: pairs for two-node motifs,
/// centers for stars and static triangles for triangles. Triangles are
/// enumerated once per call.
CountResult count_motifs(const TemporalGraph& g, const CountRequest& request);

MotifMatrix count_global(const TemporalGraph& g, Seconds delta, int threads = 0);
LocalCounts count_local(const TemporalGraph& g, Seconds delta, int threads = 0);
std::vector<MotifMatrix> count_global_multi(const TemporalGraph& g, std::span<const Seconds> deltas,
                                            int threads = 0);

/// Throws std::invalid_argument unless `deltas` is non-empty, non-negative
/// and strictly ascending.
void check_deltas(std::span<const Seconds> deltas);

}  // namespace tmotif
