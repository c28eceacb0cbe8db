#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "tmotif/ingest.hpp"
#include "tmotif/motif_index.hpp"

namespace tmotif {

enum class MotifCategory { TwoNodeSame, TwoNodeMixed, StarAllIn, StarAllOut, StarMixed, Triangle };

inline constexpr std::size_t kNumCategories = 6;
inline constexpr std::array<MotifCategory, kNumCategories> kAllCategories{
    MotifCategory::TwoNodeSame, MotifCategory::TwoNodeMixed, MotifCategory::StarAllIn,
    MotifCategory::StarAllOut,  MotifCategory::StarMixed,    MotifCategory::Triangle};

/// snake_case name used in CSV headers, e.g. "star_all_in".
std::string_view category_name(MotifCategory c);
MotifCategory category_from_name(std::string_view name);

struct CategoryInfo {
  MotifCategory category;
  /// Triangles only: the three edges form a directed cycle.
  bool cyclic = false;
};

/// Throws std::out_of_range for an invalid index.
CategoryInfo categorize(MotifIndex idx);
/// Category of a local slot in [0, 40).
MotifCategory categorize_local_slot(std::size_t slot);

std::array<Count, kNumCategories> category_totals(const MotifMatrix& m);

struct CcdfPoint {
  Count x;
  /// Fraction of counted nodes with total >= x.
  double p;
};

/// CCDF of per-node totals over the category's local slots. Nodes with a
/// zero total are left out.
std::vector<CcdfPoint> ccdf(const LocalCounts& locals, MotifCategory category);

/// Slot-wise mean of several realizations' local counts.
std::vector<std::array<double, kLocalSlots>> mean_local_counts(std::span<const LocalCounts> realizations);

struct NodeSignature {
  NodeId node;
  Count total;
  /// Local share divided by null share; NaN where the null share is zero.
  std::array<double, kLocalSlots> values;
};

struct SignatureResult {
  std::vector<NodeSignature> signatures;
  /// k was larger than the number of nodes.
  bool truncated = false;
};

/// Signatures of the k nodes with the most local motifs (ties by node id).
SignatureResult node_signatures(const LocalCounts& locals, std::span<const std::array<double, kLocalSlots>> null_mean,
                                std::size_t k);

struct BalanceRecord {
  NodeId node;
  double inflow = 0;
  double outflow = 0;
  double balance = 0;
  Count tx_count = 0;
};

struct Balances {
  /// One record per node id.
  std::vector<BalanceRecord> records;
  Count missing_weights = 0;
};

Balances balances(const EdgeList& edges);

struct ScatterRow {
  NodeId node;
  Count tx_count;
  Count motif_total;
  double balance;
};

/// One row per node with at least one transaction. Throws
/// std::invalid_argument if the two inputs cover different node counts.
std::vector<ScatterRow> scatter_data(const LocalCounts& locals, const Balances& bal);

}  // namespace tmotif
