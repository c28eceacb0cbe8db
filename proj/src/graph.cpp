#include "tmotif/graph.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "tmotif/parallel.hpp"

namespace tmotif {

TemporalGraph TemporalGraph::build(const EdgeList& edges) {
  const std::size_t m = edges.size();
  std::vector<NodeId> src(m), dst(m);
  std::vector<Timestamp> t(m);
  for (std::size_t i = 0; i < m; ++i) {
    src[i] = edges.edges[i].src;
    dst[i] = edges.edges[i].dst;
    t[i] = edges.edges[i].t;
  }
  return build(edges.nodes.size(), src, dst, t);
}

TemporalGraph TemporalGraph::build(std::size_t num_nodes, std::span<const NodeId> src,
                                   std::span<const NodeId> dst, std::span<const Timestamp> t) {
  if (src.size() != dst.size() || src.size() != t.size()) {
    throw std::invalid_argument("src, dst and t must have the same length");
  }
  const std::size_t m = src.size();
  if (m > std::numeric_limits<EdgePos>::max()) throw std::length_error("too many edges");
  TemporalGraph g;
  g.num_nodes_ = num_nodes;
  g.edge_src_.assign(src.begin(), src.end());
  g.edge_dst_.assign(dst.begin(), dst.end());
  g.edge_t_.assign(t.begin(), t.end());

  // Group edges by unordered pair; ties keep edge order.
  std::vector<std::pair<std::uint64_t, EdgePos>> keyed(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (src[i] >= num_nodes || dst[i] >= num_nodes) throw std::out_of_range("node id out of range");
    if (src[i] == dst[i]) throw std::invalid_argument("self-loop in edge list");
    if (i > 0 && t[i] < t[i - 1]) throw std::invalid_argument("edges must be sorted by time");
    const NodeId lo = std::min(src[i], dst[i]);
    const NodeId hi = std::max(src[i], dst[i]);
    keyed[i] = {(std::uint64_t(lo) << 32) | hi, static_cast<EdgePos>(i)};
  }
  std::sort(keyed.begin(), keyed.end());

  std::vector<PairId> edge_pair(m);
  g.pair_events_.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto key = keyed[i].first;
    if (i == 0 || key != keyed[i - 1].first) {
      if (g.pair_lo_.size() >= std::numeric_limits<PairId>::max()) throw std::length_error("too many pairs");
      g.pair_lo_.push_back(static_cast<NodeId>(key >> 32));
      g.pair_hi_.push_back(static_cast<NodeId>(key & 0xffffffffu));
      if (i > 0) g.pair_offsets_.push_back(i);
    }
    const EdgePos e = keyed[i].second;
    const auto p = static_cast<PairId>(g.pair_lo_.size() - 1);
    edge_pair[e] = p;
    g.pair_events_.push_back(PairEvent{t[e], e, static_cast<std::uint8_t>(src[e] == g.pair_lo_[p] ? 0 : 1)});
  }
  g.pair_offsets_.push_back(m);
  const std::size_t num_pairs = g.pair_lo_.size();

  // Aggregate adjacency. Pairs are sorted by (lo, hi), so appending in pair
  // order leaves every list sorted.
  std::vector<std::size_t> deg(num_nodes, 0);
  for (std::size_t p = 0; p < num_pairs; ++p) {
    ++deg[g.pair_lo_[p]];
    ++deg[g.pair_hi_[p]];
  }
  g.adj_offsets_.assign(num_nodes + 1, 0);
  for (std::size_t u = 0; u < num_nodes; ++u) g.adj_offsets_[u + 1] = g.adj_offsets_[u] + deg[u];
  g.adj_.resize(g.adj_offsets_[num_nodes]);
  g.adj_pairs_.resize(g.adj_offsets_[num_nodes]);
  std::vector<std::size_t> fill(g.adj_offsets_.begin(), g.adj_offsets_.end() - 1);
  std::vector<std::uint32_t> slot_lo(num_pairs), slot_hi(num_pairs);
  for (std::size_t p = 0; p < num_pairs; ++p) {
    const NodeId lo = g.pair_lo_[p], hi = g.pair_hi_[p];
    slot_lo[p] = static_cast<std::uint32_t>(fill[lo] - g.adj_offsets_[lo]);
    g.adj_[fill[lo]] = hi;
    g.adj_pairs_[fill[lo]++] = static_cast<PairId>(p);
    slot_hi[p] = static_cast<std::uint32_t>(fill[hi] - g.adj_offsets_[hi]);
    g.adj_[fill[hi]] = lo;
    g.adj_pairs_[fill[hi]++] = static_cast<PairId>(p);
  }

  // Per-node incident events in edge order.
  std::vector<std::size_t> ev_count(num_nodes, 0);
  for (std::size_t i = 0; i < m; ++i) {
    ++ev_count[src[i]];
    ++ev_count[dst[i]];
  }
  g.node_event_offsets_.assign(num_nodes + 1, 0);
  for (std::size_t u = 0; u < num_nodes; ++u) g.node_event_offsets_[u + 1] = g.node_event_offsets_[u] + ev_count[u];
  g.node_events_.resize(2 * m);
  std::vector<std::size_t> ev_fill(g.node_event_offsets_.begin(), g.node_event_offsets_.end() - 1);
  for (std::size_t i = 0; i < m; ++i) {
    const PairId p = edge_pair[i];
    const bool src_is_lo = src[i] == g.pair_lo_[p];
    const auto e = static_cast<EdgePos>(i);
    g.node_events_[ev_fill[src[i]]++] = NodeEvent{t[i], e, dst[i], src_is_lo ? slot_lo[p] : slot_hi[p], 0};
    g.node_events_[ev_fill[dst[i]]++] = NodeEvent{t[i], e, src[i], src_is_lo ? slot_hi[p] : slot_lo[p], 1};
  }
  return g;
}

std::optional<PairId> TemporalGraph::find_pair(NodeId u, NodeId v) const {
  if (u >= num_nodes_ || v >= num_nodes_) return std::nullopt;
  auto nbrs = neighbors(u);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
  if (it == nbrs.end() || *it != v) return std::nullopt;
  return neighbor_pairs(u)[static_cast<std::size_t>(it - nbrs.begin())];
}

StaticTriangleSet enumerate_static_triangles(const TemporalGraph& g, int threads) {
  const std::size_t n = g.num_nodes();
  // Rank by (degree, id); orient every pair towards the higher rank.
  std::vector<NodeId> by_rank(n);
  std::iota(by_rank.begin(), by_rank.end(), NodeId{0});
  std::sort(by_rank.begin(), by_rank.end(), [&](NodeId a, NodeId b) {
    const auto da = g.degree(a), db = g.degree(b);
    return da != db ? da < db : a < b;
  });
  std::vector<std::uint32_t> rank(n);
  for (std::size_t r = 0; r < n; ++r) rank[by_rank[r]] = static_cast<std::uint32_t>(r);

  std::vector<std::size_t> out_offsets(n + 1, 0);
  for (NodeId u = 0; u < n; ++u) {
    std::size_t c = 0;
    for (NodeId v : g.neighbors(u)) c += rank[v] > rank[u];
    out_offsets[u + 1] = out_offsets[u] + c;
  }
  std::vector<NodeId> out_nbr(out_offsets[n]);
  std::vector<PairId> out_pair(out_offsets[n]);
  for (NodeId u = 0; u < n; ++u) {
    std::size_t k = out_offsets[u];
    auto nbrs = g.neighbors(u);
    auto pairs = g.neighbor_pairs(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (rank[nbrs[i]] > rank[u]) {
        out_nbr[k] = nbrs[i];
        out_pair[k++] = pairs[i];
      }
    }
  }

  std::vector<StaticTriangle> found;
  const int workers = resolve_threads(threads);
#pragma omp parallel num_threads(workers)
  {
    std::vector<PairId> mark(n, kInvalidPair);
    std::vector<StaticTriangle> local;
#pragma omp for schedule(dynamic, 256) nowait
    for (std::int64_t ui = 0; ui < static_cast<std::int64_t>(n); ++ui) {
      const auto u = static_cast<NodeId>(ui);
      const std::size_t begin = out_offsets[u], end = out_offsets[u + 1];
      if (end - begin < 2) continue;
      for (std::size_t i = begin; i < end; ++i) mark[out_nbr[i]] = out_pair[i];
      for (std::size_t i = begin; i < end; ++i) {
        const NodeId v = out_nbr[i];
        const PairId uv = out_pair[i];
        for (std::size_t j = out_offsets[v]; j < out_offsets[v + 1]; ++j) {
          const NodeId w = out_nbr[j];
          const PairId uw = mark[w];
          if (uw == kInvalidPair) continue;
          const PairId vw = out_pair[j];
          // Sort nodes by id, carrying the opposite-side pair along.
          std::array<std::pair<NodeId, PairId>, 3> side{{{u, vw}, {v, uw}, {w, uv}}};
          std::sort(side.begin(), side.end());
          // The pair opposite node k joins the other two.
          local.push_back(StaticTriangle{side[0].first, side[1].first, side[2].first,
                                         side[2].second, side[1].second, side[0].second});
        }
      }
      for (std::size_t i = begin; i < end; ++i) mark[out_nbr[i]] = kInvalidPair;
    }
#pragma omp critical
    found.insert(found.end(), local.begin(), local.end());
  }
  std::sort(found.begin(), found.end(), [](const StaticTriangle& a, const StaticTriangle& b) {
    if (a.u != b.u) return a.u < b.u;
    if (a.v != b.v) return a.v < b.v;
    return a.w < b.w;
  });
  return StaticTriangleSet{std::move(found)};
}

namespace {

constexpr char kSnapshotMagic[8] = {'T', 'M', 'O', 'T', 'I', 'F', 'S', 'N'};
constexpr std::uint32_t kSnapshotVersion = 1;

template <typename T>
void put(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("truncated snapshot");
  return v;
}

}  // namespace

void save_snapshot(std::ostream& out, const EdgeList& edges) {
  out.write(kSnapshotMagic, sizeof(kSnapshotMagic));
  put(out, kSnapshotVersion);
  const std::uint32_t flags = (edges.has_weights ? 1u : 0u) | (edges.has_block_ids ? 2u : 0u);
  put(out, flags);
  put(out, static_cast<std::uint64_t>(edges.nodes.size()));
  for (const auto& name : edges.nodes.names()) {
    put(out, static_cast<std::uint32_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
  }
  put(out, static_cast<std::uint64_t>(edges.size()));
  for (const auto& e : edges.edges) {
    put(out, e.src);
    put(out, e.dst);
    put(out, e.t);
    put(out, e.seq);
    put(out, static_cast<std::uint8_t>(e.w.has_value()));
    put(out, e.w.value_or(0.0));
    put(out, static_cast<std::uint8_t>(e.block.has_value()));
    put(out, e.block.value_or(0));
  }
}

EdgeList load_snapshot(std::istream& in) {
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kSnapshotMagic, sizeof(magic)) != 0) throw std::runtime_error("not a snapshot file");
  if (get<std::uint32_t>(in) != kSnapshotVersion) throw std::runtime_error("unsupported snapshot version");
  const auto flags = get<std::uint32_t>(in);
  EdgeList out;
  out.has_weights = flags & 1u;
  out.has_block_ids = flags & 2u;
  const auto n = get<std::uint64_t>(in);
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto len = get<std::uint32_t>(in);
    std::string name(len, '\0');
    in.read(name.data(), len);
    if (!in) throw std::runtime_error("truncated snapshot");
    out.nodes.intern(name);
  }
  const auto m = get<std::uint64_t>(in);
  out.edges.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    TemporalEdge e;
    e.src = get<NodeId>(in);
    e.dst = get<NodeId>(in);
    e.t = get<Timestamp>(in);
    e.seq = get<std::uint64_t>(in);
    const bool has_w = get<std::uint8_t>(in);
    const double w = get<double>(in);
    if (has_w) e.w = w;
    const bool has_b = get<std::uint8_t>(in);
    const auto b = get<std::int64_t>(in);
    if (has_b) e.block = b;
    if (e.src >= n || e.dst >= n) throw std::runtime_error("snapshot node id out of range");
    out.edges.push_back(e);
  }
  out.stats.rows = out.stats.parsed = m;
  return out;
}

}  // namespace tmotif
