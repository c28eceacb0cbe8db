#include "tmotif/motif_engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <stdexcept>

#include "tmotif/parallel.hpp"

namespace tmotif {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Cell tables in slot form, derived once from the grid definition.
struct Tables {
  // Two-node cell per direction triple, index a*4 + b*2 + c.
  std::array<std::size_t, 8> two_node{};
  // Star cells per configuration, index d1*4 + d2*2 + d3.
  std::array<std::size_t, 8> pre{}, mid{}, pos{};
  // Triangle cell per label triple (label = side*2 + dir), -1 if the triple
  // does not cover all three sides.
  std::array<int, 216> triangle{};

  Tables() {
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c) {
          const int i = a * 4 + b * 2 + c;
          two_node[i] = two_node_cell(a, b, c).slot();
          pre[i] = kStarPre[a][b][c].slot();
          mid[i] = kStarMid[a][b][c].slot();
          pos[i] = kStarPos[a][b][c].slot();
        }
    // Representative triangle u=0, v=1, w=2 with sides uv, uw, vw.
    constexpr std::array<std::array<NodeId, 2>, 3> sides{{{0, 1}, {0, 2}, {1, 2}}};
    auto edge_of = [&](int label) {
      const auto& s = sides[label / 2];
      return label % 2 == 0 ? DirectedEdge{s[0], s[1]} : DirectedEdge{s[1], s[0]};
    };
    triangle.fill(-1);
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b)
        for (int c = 0; c < 6; ++c) {
          if (a / 2 == b / 2 || a / 2 == c / 2 || b / 2 == c / 2) continue;
          auto cls = classify(edge_of(a), edge_of(b), edge_of(c));
          if (!cls || cls->shape != MotifShape::Triangle) throw std::logic_error("triangle table mismatch");
          triangle[a * 36 + b * 6 + c] = static_cast<int>(cls->cell.slot());
        }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

// Sliding window over one pair's events; counts ordered triples by
// direction pattern.
std::array<Count, 8> count_pair(std::span<const PairEvent> ev, Seconds delta) {
  Count c1[2] = {0, 0};
  Count c2[2][2] = {{0, 0}, {0, 0}};
  std::array<Count, 8> c3{};
  std::size_t start = 0;
  for (std::size_t end = 0; end < ev.size(); ++end) {
    while (ev[end].t - ev[start].t > delta) {
      const int a = ev[start].dir;
      --c1[a];
      c2[a][0] -= c1[0];
      c2[a][1] -= c1[1];
      ++start;
    }
    const int c = ev[end].dir;
    c3[0 * 4 + 0 * 2 + c] += c2[0][0];
    c3[0 * 4 + 1 * 2 + c] += c2[0][1];
    c3[1 * 4 + 0 * 2 + c] += c2[1][0];
    c3[1 * 4 + 1 * 2 + c] += c2[1][1];
    c2[0][c] += c1[0];
    c2[1][c] += c1[1];
    ++c1[c];
  }
  return c3;
}

struct NeighborState {
  Count cnt[2];
  // Window pairs (e1, e2) with both edges on this neighbor.
  Count same[2][2];
  // Sum over window edges e1 on this neighbor with dir x of the admitted
  // count with dir y right after e1.
  Count first_snap[2][2];
  // Sum over window edges e2 on this neighbor with dir y of the admitted
  // count with dir x right before e2.
  Count second_snap[2][2];
};

struct StarScratch {
  std::vector<NeighborState> nbr;
  std::vector<std::array<Count, 2>> admitted_before;
};

struct StarCounts {
  // Index d1*4 + d2*2 + d3.
  std::array<Count, 8> pre{}, mid{}, pos{};
};

// Star counting around one center in a single forward pass. For the
// arriving edge e3 on neighbor n, every window pair (e1, e2) is split by
// which of its edges sit on n; pairs sharing a neighbor other than n are
// `pre`, pairs whose first edge is on n are `mid`, pairs whose second edge
// is on n are `pos`, each excluding pairs lying entirely on n.
StarCounts count_center(std::span<const NodeEvent> ev, std::size_t degree, Seconds delta, StarScratch& s) {
  s.nbr.assign(degree, NeighborState{});
  if (s.admitted_before.size() < ev.size()) s.admitted_before.resize(ev.size());
  Count admitted[2] = {0, 0};
  Count evicted[2] = {0, 0};
  Count same_total[2][2] = {{0, 0}, {0, 0}};
  StarCounts out;
  std::size_t start = 0;
  for (std::size_t end = 0; end < ev.size(); ++end) {
    while (ev[end].t - ev[start].t > delta) {
      const auto& e = ev[start];
      const int x = e.dir;
      auto& st = s.nbr[e.nbr_slot];
      const auto& before = s.admitted_before[start];
      --st.cnt[x];
      for (int y = 0; y < 2; ++y) {
        st.same[x][y] -= st.cnt[y];
        same_total[x][y] -= st.cnt[y];
        st.first_snap[x][y] -= before[y] + (y == x ? 1 : 0);
        st.second_snap[x][y] -= before[y];
      }
      ++evicted[x];
      ++start;
    }

    const auto& e = ev[end];
    const int d3 = e.dir;
    auto& st = s.nbr[e.nbr_slot];
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        const Count on_n = st.same[x][y];
        const Count first_on_n = st.cnt[x] * admitted[y] - st.first_snap[x][y];
        const Count second_on_n = st.second_snap[y][x] - st.cnt[y] * evicted[x];
        const int i = x * 4 + y * 2 + d3;
        out.pre[i] += same_total[x][y] - on_n;
        out.mid[i] += first_on_n - on_n;
        out.pos[i] += second_on_n - on_n;
      }
    }

    s.admitted_before[end] = {admitted[0], admitted[1]};
    for (int x = 0; x < 2; ++x) {
      st.same[x][d3] += st.cnt[x];
      same_total[x][d3] += st.cnt[x];
      st.second_snap[d3][x] += admitted[x];
    }
    ++admitted[d3];
    ++st.cnt[d3];
    for (int y = 0; y < 2; ++y) st.first_snap[d3][y] += admitted[y];
  }
  return out;
}

struct TriangleEvent {
  Timestamp t;
  std::uint8_t label;
};

// The 48 label triples that cover all three sides, with the window pairs
// each arriving label completes and the labels each one pairs with.
struct TriangleLabelLists {
  struct Completion {
    std::uint8_t a, b, triple;
  };
  std::array<std::array<Completion, 8>, 6> completes{};
  std::array<std::array<std::uint8_t, 4>, 6> others{};
  /// Grid slot per triple index.
  std::array<std::size_t, 48> cell{};

  explicit TriangleLabelLists(const std::array<int, 216>& by_label) {
    std::size_t triple = 0;
    for (int c = 0; c < 6; ++c) {
      int nc = 0, no = 0;
      for (int b = 0; b < 6; ++b) {
        if (b / 2 == c / 2) continue;
        others[c][no++] = static_cast<std::uint8_t>(b);
        for (int a = 0; a < 6; ++a) {
          if (a / 2 == c / 2 || a / 2 == b / 2) continue;
          completes[c][nc++] = {static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                                static_cast<std::uint8_t>(triple)};
          cell[triple++] = static_cast<std::size_t>(by_label[a * 36 + b * 6 + c]);
        }
      }
    }
  }
};

const TriangleLabelLists& label_lists() {
  static const TriangleLabelLists l(tables().triangle);
  return l;
}

void count_triangle(std::span<const TriangleEvent> ev, Seconds delta, std::array<Count, 48>& c3) {
  const auto& lists = label_lists();
  Count c1[6] = {};
  Count c2[6][6] = {};
  c3.fill(0);
  std::size_t start = 0;
  for (std::size_t end = 0; end < ev.size(); ++end) {
    while (ev[end].t - ev[start].t > delta) {
      const int a = ev[start].label;
      --c1[a];
      for (std::uint8_t b : lists.others[a]) c2[a][b] -= c1[b];
      ++start;
    }
    const int c = ev[end].label;
    for (auto [a, b, triple] : lists.completes[c]) c3[triple] += c2[a][b];
    for (std::uint8_t b : lists.others[c]) c2[b][c] += c1[b];
    ++c1[c];
  }
}

void merge_triangle_events(const TemporalGraph& g, const StaticTriangle& tri, std::vector<TriangleEvent>& out) {
  out.clear();
  const std::array<std::span<const PairEvent>, 3> lists{g.pair_events(tri.uv), g.pair_events(tri.uw),
                                                        g.pair_events(tri.vw)};
  std::array<std::size_t, 3> at{0, 0, 0};
  out.reserve(lists[0].size() + lists[1].size() + lists[2].size());
  while (true) {
    int best = -1;
    for (int s = 0; s < 3; ++s) {
      if (at[s] < lists[s].size() && (best < 0 || lists[s][at[s]].pos < lists[best][at[best]].pos)) best = s;
    }
    if (best < 0) break;
    const auto& pe = lists[best][at[best]++];
    out.push_back(TriangleEvent{pe.t, static_cast<std::uint8_t>(best * 2 + pe.dir)});
  }
}

// Adds to a local counter, atomically when several workers share it.
struct LocalSink {
  std::vector<LocalCounts>* local = nullptr;
  bool atomic = false;

  void add(std::size_t k, NodeId node, std::size_t slot, Count v) const {
    if (v == 0) return;
    Count& cell = (*local)[k].per_node[node][slot];
    if (atomic) {
      std::atomic_ref<Count>(cell).fetch_add(v, std::memory_order_relaxed);
    } else {
      cell += v;
    }
  }
};

// Time extent of one unit's event list: its span and the shortest span of
// three consecutive events.
struct Extent {
  Seconds tightest;
  Seconds span;
};

template <typename Event>
Extent extent_of(std::span<const Event> ev) {
  Seconds tightest = ev[2].t - ev[0].t;
  for (std::size_t i = 3; i < ev.size(); ++i) tightest = std::min(tightest, ev[i].t - ev[i - 2].t);
  return {tightest, ev.back().t - ev.front().t};
}

// Runs `count(delta, k_first, k_last)` for each delta that can see a motif.
// Below the tightest triple span every count is zero; at or above the full
// span the window never slides, so one run serves all remaining deltas.
template <typename F>
void for_each_delta(std::span<const Seconds> deltas, Extent ext, F&& count) {
  const std::size_t K = deltas.size();
  for (std::size_t k = 0; k < K; ++k) {
    if (deltas[k] < ext.tightest) continue;
    if (deltas[k] >= ext.span) {
      count(deltas[k], k, K);
      return;
    }
    count(deltas[k], k, k + 1);
  }
}

}  // namespace

void check_deltas(std::span<const Seconds> deltas) {
  if (deltas.empty()) throw std::invalid_argument("delta list is empty");
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    if (deltas[k] < 0) throw std::invalid_argument("delta must be non-negative");
    if (k > 0 && deltas[k] <= deltas[k - 1]) throw std::invalid_argument("deltas must be strictly ascending");
  }
}

CountResult count_motifs(const TemporalGraph& g, const CountRequest& request) {
  check_deltas(request.deltas);
  const auto& tab = tables();
  const std::span<const Seconds> deltas(request.deltas);
  const std::size_t K = deltas.size();
  const int workers = resolve_threads(request.threads);

  CountResult result;
  result.global.assign(K, MotifMatrix{});
  for (std::size_t k = 0; k < K; ++k) result.global[k].delta = deltas[k];
  if (request.local) {
    result.local.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
      result.local[k].delta = deltas[k];
      result.local[k].per_node.assign(g.num_nodes(), LocalMotifVector{});
    }
  }
  const LocalSink sink{request.local ? &result.local : nullptr, workers > 1};

  std::vector<std::vector<MotifMatrix>> acc(static_cast<std::size_t>(workers), std::vector<MotifMatrix>(K));

  // Two-node motifs, one pair at a time.
  auto t0 = Clock::now();
  const auto num_pairs = static_cast<std::int64_t>(g.num_pairs());
#pragma omp parallel for num_threads(workers) schedule(dynamic, 512)
  for (std::int64_t pi = 0; pi < num_pairs; ++pi) {
    const auto p = static_cast<PairId>(pi);
    const auto ev = g.pair_events(p);
    if (ev.size() < 3) continue;
    auto& mine = acc[static_cast<std::size_t>(worker_id())];
    const NodeId lo = g.pair_lo(p), hi = g.pair_hi(p);
    for_each_delta(deltas, extent_of(ev), [&](Seconds delta, std::size_t k0, std::size_t k1) {
      const auto c3 = count_pair(ev, delta);
      for (std::size_t i = 0; i < 8; ++i) {
        if (c3[i] == 0) continue;
        const std::size_t cell = tab.two_node[i];
        const bool lo_first = (i / 4) == 0;
        const std::size_t rev = reversed_two_node_slot(MotifIndex::from_slot(cell));
        for (std::size_t k = k0; k < k1; ++k) {
          mine[k].counts[cell] += c3[i];
          if (sink.local) {
            sink.add(k, lo_first ? lo : hi, cell, c3[i]);
            sink.add(k, lo_first ? hi : lo, rev, c3[i]);
          }
        }
      }
    });
  }
  result.timings.two_node = seconds_since(t0);

  // Stars, one center at a time; only the center is credited.
  t0 = Clock::now();
  const auto num_nodes = static_cast<std::int64_t>(g.num_nodes());
#pragma omp parallel num_threads(workers)
  {
    StarScratch scratch;
#pragma omp for schedule(dynamic, 256)
    for (std::int64_t ui = 0; ui < num_nodes; ++ui) {
      const auto u = static_cast<NodeId>(ui);
      const auto ev = g.node_events(u);
      if (ev.size() < 3 || g.degree(u) < 2) continue;
      auto& mine = acc[static_cast<std::size_t>(worker_id())];
      for_each_delta(deltas, extent_of(ev), [&](Seconds delta, std::size_t k0, std::size_t k1) {
        const auto sc = count_center(ev, g.degree(u), delta, scratch);
        for (std::size_t i = 0; i < 8; ++i) {
          for (auto [v, cell] : {std::pair{sc.pre[i], tab.pre[i]}, std::pair{sc.mid[i], tab.mid[i]},
                                 std::pair{sc.pos[i], tab.pos[i]}}) {
            if (v == 0) continue;
            for (std::size_t k = k0; k < k1; ++k) {
              mine[k].counts[cell] += v;
              // Each center is handled by exactly one worker.
              if (sink.local) result.local[k].per_node[u][cell] += v;
            }
          }
        }
      });
    }
  }
  result.timings.stars = seconds_since(t0);

  // Triangles: enumerate static triangles once, then count each for every delta.
  t0 = Clock::now();
  const auto triangles = enumerate_static_triangles(g, workers);
  result.timings.triangle_enumeration = seconds_since(t0);
  result.timings.triangle_enumerations = 1;
  result.timings.static_triangles = triangles.size();

  t0 = Clock::now();
  const auto num_tri = static_cast<std::int64_t>(triangles.size());
  const auto& lists = label_lists();
#pragma omp parallel num_threads(workers)
  {
    std::vector<TriangleEvent> merged;
    std::array<Count, 48> c3{};
#pragma omp for schedule(dynamic, 256)
    for (std::int64_t ti = 0; ti < num_tri; ++ti) {
      const auto& tri = triangles.triangles[static_cast<std::size_t>(ti)];
      merge_triangle_events(g, tri, merged);
      if (merged.size() < 3) continue;
      auto& mine = acc[static_cast<std::size_t>(worker_id())];
      for_each_delta(deltas, extent_of(std::span<const TriangleEvent>(merged)), [&](Seconds delta, std::size_t k0, std::size_t k1) {
        count_triangle(merged, delta, c3);
        for (std::size_t i = 0; i < 48; ++i) {
          if (c3[i] == 0) continue;
          const std::size_t cell = lists.cell[i];
          for (std::size_t k = k0; k < k1; ++k) {
            mine[k].counts[cell] += c3[i];
            if (sink.local) {
              sink.add(k, tri.u, cell, c3[i]);
              sink.add(k, tri.v, cell, c3[i]);
              sink.add(k, tri.w, cell, c3[i]);
            }
          }
        }
      });
    }
  }
  result.timings.triangles = seconds_since(t0);

  for (const auto& worker : acc) {
    for (std::size_t k = 0; k < K; ++k) result.global[k] += worker[k];
  }
  return result;
}

MotifMatrix count_global(const TemporalGraph& g, Seconds delta, int threads) {
  if (delta < 0) throw std::invalid_argument("delta must be non-negative");
  return count_motifs(g, CountRequest{{delta}, false, threads}).global.front();
}

LocalCounts count_local(const TemporalGraph& g, Seconds delta, int threads) {
  if (delta < 0) throw std::invalid_argument("delta must be non-negative");
  return std::move(count_motifs(g, CountRequest{{delta}, true, threads}).local.front());
}

std::vector<MotifMatrix> count_global_multi(const TemporalGraph& g, std::span<const Seconds> deltas, int threads) {
  return count_motifs(g, CountRequest{std::vector<Seconds>(deltas.begin(), deltas.end()), false, threads}).global;
}

}  // namespace tmotif
