#pragma once

#include <cstddef>
#include <stdexcept>

#include "tmotif/graph.hpp"
#include "tmotif/motif_index.hpp"

namespace tmotif {

inline constexpr std::size_t kDefaultOracleGuard = 2000;

class OracleGuardError : public std::runtime_error {
 public:
  OracleGuardError(std::size_t edges, std::size_t guard);
  std::size_t edges() const { return edges_; }
  std::size_t guard() const { return guard_; }

 private:
  std::size_t edges_;
  std::size_t guard_;
};

/// Triples seen by the brute-force enumeration, split by induced node count.
struct TripleCensus {
  Count within_delta = 0;
  Count two_nodes = 0;
  Count three_nodes = 0;
  Count discarded = 0;
};

struct OracleResult {
  MotifMatrix global;
  LocalCounts local;
  TripleCensus census;
};

/// Reference counter: classifies every ordered edge triple with span <= delta.
/// O(m^3); refuses graphs with more than `guard` edges.
OracleResult brute_force_count(const TemporalGraph& g, Seconds delta, std::size_t guard = kDefaultOracleGuard);

}  // namespace tmotif
