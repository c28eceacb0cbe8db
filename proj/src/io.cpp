#include "tmotif/io.hpp"

#include <cmath>
#include <ostream>

#include "tmotif/format.hpp"

namespace tmotif::io {

namespace {

using nlohmann::json;

// Quotes a CSV field when it holds a delimiter, quote or line break.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void cell_header(std::ostream& out, const char* prefix, std::size_t n = kGlobalCells) {
  for (std::size_t s = 0; s < n; ++s) out << ',' << prefix << slot_label(s);
}

const char* shape_name(MotifShape s) {
  switch (s) {
    case MotifShape::TwoNode:
      return "two_node";
    case MotifShape::Star:
      return "star";
    case MotifShape::Triangle:
      return "triangle";
  }
  return "";
}

}  // namespace

std::string slot_label(std::size_t slot) {
  const auto cell = grid_cell_of_local_slot(slot);
  std::string s = "M" + std::to_string(cell.row) + std::to_string(cell.col);
  if (slot >= kGlobalCells) s += 'r';
  return s;
}

json json_number(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

void write_motif_matrix_csv(std::ostream& out, const MotifMatrix& m) {
  out << "i,j,count\n";
  for (std::size_t s = 0; s < kGlobalCells; ++s) {
    const auto idx = MotifIndex::from_slot(s);
    out << idx.row << ',' << idx.col << ',' << m.counts[s] << '\n';
  }
}

json motif_matrix_json(const MotifMatrix& m) {
  json rows = json::array();
  for (int i = 1; i <= 6; ++i) {
    json row = json::array();
    for (int j = 1; j <= 6; ++j) row.push_back(m.at(i, j));
    rows.push_back(row);
  }
  return {{"delta", m.delta}, {"total", m.total()}, {"counts", rows}};
}

void write_legend_csv(std::ostream& out) {
  out << "slot,label,i,j,shape,category,cyclic,pattern\n";
  for (std::size_t s = 0; s < kLocalSlots; ++s) {
    const auto cell = grid_cell_of_local_slot(s);
    const auto cat = categorize_local_slot(s);
    const bool cyclic = s < kGlobalCells && categorize(cell).cyclic;
    std::string pattern = describe_cell(cell);
    if (s >= kGlobalCells) pattern += " (seen from Y)";
    out << s << ',' << slot_label(s) << ',' << cell.row << ',' << cell.col << ',' << shape_name(shape_of(cell))
        << ',' << category_name(cat) << ',' << (cyclic ? 1 : 0) << ',' << csv_field(pattern) << '\n';
  }
}

void write_local_csv(std::ostream& out, const LocalCounts& lc, const NodeTable& nodes) {
  out << "node_id";
  cell_header(out, "", kLocalSlots);
  out << '\n';
  for (std::size_t u = 0; u < lc.per_node.size(); ++u) {
    out << csv_field(nodes.name(static_cast<NodeId>(u)));
    for (Count c : lc.per_node[u]) out << ',' << c;
    out << '\n';
  }
}

void write_multi_delta_csv(std::ostream& out, const std::vector<MotifMatrix>& ms) {
  out << "delta_seconds";
  cell_header(out, "");
  out << ",total\n";
  for (const auto& m : ms) {
    out << m.delta;
    for (Count c : m.counts) out << ',' << c;
    out << ',' << m.total() << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const DeltaSweepSeries& s) {
  out << "delta_seconds";
  cell_header(out, "cum_");
  cell_header(out, "inc_");
  if (s.nulls) {
    for (std::size_t c = 0; c < kGlobalCells; ++c) {
      out << ",null_mean_" << slot_label(c) << ",null_std_" << slot_label(c);
    }
  }
  out << '\n';
  for (std::size_t k = 0; k < s.grid.size(); ++k) {
    out << s.grid[k];
    for (Count c : s.cumulative[k].counts) out << ',' << c;
    for (std::size_t c = 0; c < kGlobalCells; ++c) {
      out << ',';
      if (k > 0) out << s.increments[k][c];
    }
    if (s.nulls) {
      for (std::size_t c = 0; c < kGlobalCells; ++c) {
        out << ',';
        if (k > 0) out << format_ratio(s.nulls->mean[k][c]);
        out << ',';
        if (k > 0) out << format_ratio(s.nulls->std[k][c]);
      }
    }
    out << '\n';
  }
}

void write_sweep_categories_csv(std::ostream& out, const DeltaSweepSeries& s) {
  out << "delta_seconds";
  for (auto c : kAllCategories) out << ",cum_" << category_name(c);
  for (auto c : kAllCategories) out << ",inc_" << category_name(c);
  if (s.nulls) {
    for (auto c : kAllCategories) out << ",null_mean_" << category_name(c) << ",null_std_" << category_name(c);
  }
  out << '\n';
  for (std::size_t k = 0; k < s.grid.size(); ++k) {
    out << s.grid[k];
    for (Count c : s.category_cumulative[k]) out << ',' << c;
    for (std::size_t c = 0; c < kNumCategories; ++c) {
      out << ',';
      if (k > 0) out << s.category_increments[k][c];
    }
    if (s.nulls) {
      for (std::size_t c = 0; c < kNumCategories; ++c) {
        out << ',';
        if (k > 0) out << format_ratio(s.nulls->category_mean[k][c]);
        out << ',';
        if (k > 0) out << format_ratio(s.nulls->category_std[k][c]);
      }
    }
    out << '\n';
  }
}

void write_window_csv(std::ostream& out, const WindowSeries& w) {
  out << "window_start,window_end,tx_count";
  cell_header(out, "");
  for (auto c : kAllCategories) out << ',' << category_name(c);
  for (auto c : kAllCategories) out << ",share_" << category_name(c);
  out << '\n';
  for (const auto& r : w.windows) {
    out << r.start << ',' << r.end << ',' << r.tx_count;
    for (Count c : r.counts.counts) out << ',' << c;
    for (Count c : r.categories) out << ',' << c;
    for (double x : r.shares) out << ',' << format_ratio(x);
    out << '\n';
  }
}

void write_null_ratio_csv(std::ostream& out, const RatioMatrix& r) {
  out << "i,j,real,null_mean,null_std,ratio\n";
  for (std::size_t s = 0; s < kGlobalCells; ++s) {
    const auto idx = MotifIndex::from_slot(s);
    out << idx.row << ',' << idx.col << ',' << r.real.counts[s] << ',' << format_ratio(r.null_mean[s]) << ','
        << format_ratio(r.null_std[s]) << ',' << format_ratio(r.ratio[s]) << '\n';
  }
}

json null_ratio_json(const RatioMatrix& r, std::uint64_t seed) {
  json cells = json::array();
  for (std::size_t s = 0; s < kGlobalCells; ++s) {
    const auto idx = MotifIndex::from_slot(s);
    cells.push_back({{"i", idx.row},
                     {"j", idx.col},
                     {"real", r.real.counts[s]},
                     {"null_mean", json_number(r.null_mean[s])},
                     {"null_std", json_number(r.null_std[s])},
                     {"ratio", json_number(r.ratio[s])}});
  }
  return {{"delta", r.delta},
          {"seed", seed},
          {"realizations", r.realizations},
          {"null_model", "timestamp_shuffle"},
          {"tie_order", "shuffled ties keep original row order; seq reassigned after sorting"},
          {"zero_conventions", {{"zero_over_zero", 1}, {"positive_over_zero", "inf"}}},
          {"std", "population"},
          {"cells", cells}};
}

void write_intra_block_csv(std::ostream& out, const IntraBlockReport& r) {
  out << "i,j,block_order,max_deviation,mean_deviation\n";
  for (std::size_t s = 0; s < kGlobalCells; ++s) {
    const auto idx = MotifIndex::from_slot(s);
    out << idx.row << ',' << idx.col << ',' << r.block_order.counts[s] << ',' << format_ratio(r.max_deviation[s])
        << ',' << format_ratio(r.mean_deviation[s]) << '\n';
  }
}

json intra_block_json(const IntraBlockReport& r, std::uint64_t seed) {
  json shuffled = json::array();
  for (const auto& m : r.shuffled) shuffled.push_back(m.counts);
  return {{"delta", r.delta},
          {"seed", seed},
          {"realizations", r.shuffled.size()},
          {"tie_groups", r.tie_groups},
          {"largest_group", r.largest_group},
          {"max_deviation", json_number(r.max_overall)},
          {"metric", "|shuffled - block_order| / block_order over cells with block_order > 0"},
          {"block_order", r.block_order.counts},
          {"shuffled", shuffled}};
}

void write_ccdf_csv(std::ostream& out, const LocalCounts& lc) {
  out << "category,x,p\n";
  for (auto c : kAllCategories) {
    for (const auto& pt : ccdf(lc, c)) out << category_name(c) << ',' << pt.x << ',' << format_ratio(pt.p) << '\n';
  }
}

void write_signatures_csv(std::ostream& out, const SignatureResult& s, const NodeTable& nodes) {
  out << "rank,node_id,total";
  cell_header(out, "", kLocalSlots);
  out << '\n';
  for (std::size_t i = 0; i < s.signatures.size(); ++i) {
    const auto& sig = s.signatures[i];
    out << i + 1 << ',' << csv_field(nodes.name(sig.node)) << ',' << sig.total;
    for (double v : sig.values) out << ',' << format_ratio(v);
    out << '\n';
  }
}

json signatures_json(const SignatureResult& s, const NodeTable& nodes, std::size_t k, std::size_t realizations,
                     std::uint64_t seed, Seconds delta) {
  json list = json::array();
  for (const auto& sig : s.signatures) {
    json values = json::array();
    for (double v : sig.values) values.push_back(json_number(v));
    list.push_back({{"node_id", nodes.name(sig.node)}, {"total", sig.total}, {"values", values}});
  }
  json labels = json::array();
  for (std::size_t i = 0; i < kLocalSlots; ++i) labels.push_back(slot_label(i));
  return {{"delta", delta},
          {"k", k},
          {"truncated", s.truncated},
          {"realizations", realizations},
          {"seed", seed},
          {"sentinel", "null where the null share is zero"},
          {"slots", labels},
          {"signatures", list}};
}

void write_balances_csv(std::ostream& out, const Balances& b, const NodeTable& nodes) {
  out << "node_id,inflow,outflow,balance,tx_count\n";
  for (const auto& r : b.records) {
    out << csv_field(nodes.name(r.node)) << ',' << format_double(r.inflow) << ',' << format_double(r.outflow) << ','
        << format_double(r.balance) << ',' << r.tx_count << '\n';
  }
}

void write_scatter_csv(std::ostream& out, const std::vector<ScatterRow>& rows, const NodeTable& nodes) {
  out << "node_id,tx_count,motif_total,balance\n";
  for (const auto& r : rows) {
    out << csv_field(nodes.name(r.node)) << ',' << r.tx_count << ',' << r.motif_total << ','
        << format_double(r.balance) << '\n';
  }
}

json validation_json(const EdgeList& edges) {
  const auto order = validate_order(edges);
  const auto& st = edges.stats;
  std::uint64_t tied_edges = 0;
  for (auto g : order.tie_group_sizes) {
    if (g > 1) tied_edges += g;
  }
  json out = {{"rows", st.rows},
              {"header_rows", st.header_rows},
              {"parsed", st.parsed},
              {"dropped_self_loops", st.dropped_self_loops},
              {"malformed", st.malformed},
              {"truncated_timestamps", st.truncated_timestamps},
              {"missing_weights", st.missing_weights},
              {"resorted", st.resorted},
              {"nodes", edges.nodes.size()},
              {"edges", edges.size()},
              {"has_weights", edges.has_weights},
              {"has_block_ids", edges.has_block_ids},
              {"strict_total_order", order.strict_total_order},
              {"tie_groups", order.groups_with_ties},
              {"tied_edges", tied_edges},
              {"largest_tie_group", order.largest_group}};
  if (!edges.empty()) {
    out["first_timestamp"] = edges.edges.front().t;
    out["last_timestamp"] = edges.edges.back().t;
  }
  return out;
}

}  // namespace tmotif::io
