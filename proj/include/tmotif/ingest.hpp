#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "tmotif/types.hpp"

namespace tmotif {

/// One transaction.
struct TemporalEdge {
  NodeId src = 0;
  NodeId dst = 0;
  Timestamp t = 0;
  /// Input row index (0-based, across all inputs); breaks ties in t.
  std::uint64_t seq = 0;
  std::optional<double> w;
  /// Explicit block id, when the schema provides one.
  std::optional<std::int64_t> block;

  friend bool operator==(const TemporalEdge&, const TemporalEdge&) = default;
};

/// Interns opaque node identifiers to dense ids in order of first appearance.
class NodeTable {
 public:
  NodeId intern(std::string_view name);
  std::optional<NodeId> find(std::string_view name) const;
  const std::string& name(NodeId id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId, Hash, std::equal_to<>> index_;
};

struct IngestStats {
  std::uint64_t rows = 0;
  std::uint64_t header_rows = 0;
  std::uint64_t parsed = 0;
  std::uint64_t dropped_self_loops = 0;
  std::uint64_t malformed = 0;
  std::uint64_t truncated_timestamps = 0;
  std::uint64_t missing_weights = 0;
  /// Input was not already in time order.
  bool resorted = false;
};

struct EdgeList {
  /// Sorted by (t, seq).
  std::vector<TemporalEdge> edges;
  NodeTable nodes;
  IngestStats stats;
  bool has_weights = false;
  bool has_block_ids = false;

  std::size_t size() const { return edges.size(); }
  bool empty() const { return edges.empty(); }
};

/// A column picked by 0-based index or by header name.
using ColumnRef = std::variant<std::size_t, std::string>;

struct Schema {
  ColumnRef src = std::size_t{0};
  ColumnRef dst = std::size_t{1};
  ColumnRef time = std::size_t{2};
  std::optional<ColumnRef> weight;
  std::optional<ColumnRef> block;

  /// Parses "src=COL,dst=COL,time=COL[,weight=COL][,block=COL]". A COL that
  /// is all digits is an index, anything else a header name.
  static Schema parse(std::string_view spec);
  bool uses_names() const;
  std::string to_string() const;
};

enum class InputFormat { Csv, Jsonl };

struct ParseOptions {
  InputFormat format = InputFormat::Csv;
  char delimiter = ',';
  /// Abort on the first malformed row instead of skipping it.
  bool strict = false;
};

class IngestError : public std::runtime_error {
 public:
  IngestError(const std::string& what, std::uint64_t row)
      : std::runtime_error(what), row_(row) {}
  std::uint64_t row() const { return row_; }

 private:
  std::uint64_t row_;
};

/// Accumulates rows from one or more inputs; `finish` sorts and seals.
class EdgeListBuilder {
 public:
  explicit EdgeListBuilder(Schema schema = {}, ParseOptions options = {});

  void add_stream(std::istream& in);
  /// Adds one already-parsed transaction.
  void add(std::string_view src, std::string_view dst, Timestamp t,
           std::optional<double> w = std::nullopt, std::optional<std::int64_t> block = std::nullopt);
  EdgeList finish() &&;

 private:
  void add_csv(std::istream& in);
  void add_jsonl(std::istream& in);
  void malformed(const std::string& why);

  Schema schema_;
  ParseOptions options_;
  EdgeList out_;
  std::uint64_t next_row_ = 0;
};

EdgeList parse_edges(std::istream& in, const Schema& schema, const ParseOptions& options = {});
EdgeList parse_edges(std::string_view text, const Schema& schema, const ParseOptions& options = {});

/// Re-sorts by (t, seq) after edits to timestamps or seq values.
void sort_edges(std::vector<TemporalEdge>& edges);

struct OrderReport {
  std::uint64_t num_edges = 0;
  /// Sizes of maximal equal-timestamp (or equal (t, block)) runs, in time order.
  std::vector<std::uint64_t> tie_group_sizes;
  std::uint64_t largest_group = 0;
  std::uint64_t groups_with_ties = 0;
  bool strict_total_order = true;
  bool resorted = false;
  bool uses_block_ids = false;
};

OrderReport validate_order(const EdgeList& edges);

/// Start offsets of tie groups (same t, and same block id when present) in
/// the sorted edge list, plus a final sentinel equal to edges.size().
std::vector<std::size_t> tie_group_bounds(const EdgeList& edges);

/// Writes edges as CSV with header src,dst,time[,weight][,block] in list order.
void write_edges_csv(std::ostream& out, const EdgeList& edges);

/// Copy of `edges` restricted to [begin, end) positions, sharing the node table.
EdgeList slice_edges(const EdgeList& edges, std::size_t begin, std::size_t end);

}  // namespace tmotif
