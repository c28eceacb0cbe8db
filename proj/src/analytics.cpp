#include "tmotif/analytics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tmotif {

namespace {

struct CategoryTable {
  std::array<CategoryInfo, kGlobalCells> cells{};

  CategoryTable() {
    for (std::size_t s = 0; s < kGlobalCells; ++s) {
      const auto idx = MotifIndex::from_slot(s);
      switch (shape_of(idx)) {
        case MotifShape::TwoNode:
          cells[s] = {idx == MotifIndex{6, 1} ? MotifCategory::TwoNodeSame : MotifCategory::TwoNodeMixed};
          break;
        case MotifShape::Star:
          cells[s] = {MotifCategory::StarMixed};
          break;
        case MotifShape::Triangle:
          cells[s] = {MotifCategory::Triangle, idx == MotifIndex{2, 4} || idx == MotifIndex{3, 5}};
          break;
      }
    }
    for (const auto* table : {&kStarPre, &kStarMid, &kStarPos}) {
      cells[(*table)[1][1][1].slot()].category = MotifCategory::StarAllIn;
      cells[(*table)[0][0][0].slot()].category = MotifCategory::StarAllOut;
    }
  }
};

const CategoryTable& category_table() {
  static const CategoryTable t;
  return t;
}

constexpr std::array<std::string_view, kNumCategories> kNames{"two_node_same", "two_node_mixed", "star_all_in",
                                                              "star_all_out",  "star_mixed",     "triangle"};

}  // namespace

std::string_view category_name(MotifCategory c) { return kNames[static_cast<std::size_t>(c)]; }

MotifCategory category_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNumCategories; ++i) {
    if (kNames[i] == name) return kAllCategories[i];
  }
  throw std::invalid_argument("unknown motif category: " + std::string(name));
}

CategoryInfo categorize(MotifIndex idx) {
  if (!idx.valid()) throw std::out_of_range("motif index out of range");
  return category_table().cells[idx.slot()];
}

MotifCategory categorize_local_slot(std::size_t slot) {
  if (slot >= kLocalSlots) throw std::out_of_range("local slot out of range");
  if (slot == kReversedM61) return MotifCategory::TwoNodeSame;
  if (slot >= kGlobalCells) return MotifCategory::TwoNodeMixed;
  return category_table().cells[slot].category;
}

std::array<Count, kNumCategories> category_totals(const MotifMatrix& m) {
  std::array<Count, kNumCategories> out{};
  for (std::size_t s = 0; s < kGlobalCells; ++s) {
    out[static_cast<std::size_t>(category_table().cells[s].category)] += m.counts[s];
  }
  return out;
}

std::vector<CcdfPoint> ccdf(const LocalCounts& locals, MotifCategory category) {
  std::vector<std::size_t> slots;
  for (std::size_t s = 0; s < kLocalSlots; ++s) {
    if (categorize_local_slot(s) == category) slots.push_back(s);
  }
  std::vector<Count> totals;
  for (const auto& v : locals.per_node) {
    Count t = 0;
    for (std::size_t s : slots) t += v[s];
    if (t > 0) totals.push_back(t);
  }
  std::sort(totals.begin(), totals.end());
  std::vector<CcdfPoint> out;
  const auto n = static_cast<double>(totals.size());
  for (std::size_t i = 0; i < totals.size(); ++i) {
    if (i > 0 && totals[i] == totals[i - 1]) continue;
    out.push_back({totals[i], static_cast<double>(totals.size() - i) / n});
  }
  return out;
}

std::vector<std::array<double, kLocalSlots>> mean_local_counts(std::span<const LocalCounts> realizations) {
  if (realizations.empty()) throw std::invalid_argument("no realizations to average");
  const std::size_t n = realizations.front().per_node.size();
  std::vector<std::array<double, kLocalSlots>> out(n);
  for (const auto& r : realizations) {
    if (r.per_node.size() != n) throw std::invalid_argument("realizations cover different node counts");
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t s = 0; s < kLocalSlots; ++s) out[u][s] += static_cast<double>(r.per_node[u][s]);
    }
  }
  const auto k = static_cast<double>(realizations.size());
  for (auto& v : out) {
    for (auto& x : v) x /= k;
  }
  return out;
}

SignatureResult node_signatures(const LocalCounts& locals, std::span<const std::array<double, kLocalSlots>> null_mean,
                                std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  const std::size_t n = locals.per_node.size();
  if (null_mean.size() != n) throw std::invalid_argument("null counts cover a different node count");

  std::vector<std::pair<Count, NodeId>> ranked(n);
  for (std::size_t u = 0; u < n; ++u) {
    const auto& v = locals.per_node[u];
    ranked[u] = {std::accumulate(v.begin(), v.end(), Count{0}), static_cast<NodeId>(u)};
  }
  SignatureResult out;
  out.truncated = k > n;
  const std::size_t take = std::min(k, n);
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take), ranked.end(),
                    [](const auto& a, const auto& b) { return a.first != b.first ? a.first > b.first : a.second < b.second; });

  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < take; ++i) {
    const auto [total, u] = ranked[i];
    const auto& real = locals.per_node[u];
    const auto& null = null_mean[u];
    const double null_total = std::accumulate(null.begin(), null.end(), 0.0);
    NodeSignature sig{u, total, {}};
    for (std::size_t s = 0; s < kLocalSlots; ++s) {
      const double null_share = null_total > 0 ? null[s] / null_total : 0.0;
      if (null_share == 0 || total == 0) {
        sig.values[s] = nan;
      } else {
        sig.values[s] = (static_cast<double>(real[s]) / static_cast<double>(total)) / null_share;
      }
    }
    out.signatures.push_back(sig);
  }
  return out;
}

Balances balances(const EdgeList& edges) {
  Balances out;
  out.records.resize(edges.nodes.size());
  for (std::size_t u = 0; u < out.records.size(); ++u) out.records[u].node = static_cast<NodeId>(u);
  for (const auto& e : edges.edges) {
    const double w = e.w.value_or(0.0);
    if (!e.w) ++out.missing_weights;
    out.records[e.src].outflow += w;
    out.records[e.dst].inflow += w;
    ++out.records[e.src].tx_count;
    ++out.records[e.dst].tx_count;
  }
  for (auto& r : out.records) r.balance = r.inflow - r.outflow;
  return out;
}

std::vector<ScatterRow> scatter_data(const LocalCounts& locals, const Balances& bal) {
  if (locals.per_node.size() != bal.records.size()) {
    throw std::invalid_argument("local counts and balances cover different node counts");
  }
  std::vector<ScatterRow> rows;
  for (std::size_t u = 0; u < bal.records.size(); ++u) {
    const auto& r = bal.records[u];
    if (r.tx_count == 0) continue;
    const auto& v = locals.per_node[u];
    rows.push_back({r.node, r.tx_count, std::accumulate(v.begin(), v.end(), Count{0}), r.balance});
  }
  return rows;
}

}  // namespace tmotif
