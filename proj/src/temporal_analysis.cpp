#include "tmotif/temporal_analysis.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "tmotif/graph.hpp"

namespace tmotif {

namespace {

Timestamp floor_div(Timestamp a, Timestamp b) {
  Timestamp q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Timestamp month_start(Timestamp t) {
  using namespace std::chrono;
  const auto day = floor<days>(sys_seconds{seconds{t}});
  const year_month_day ymd{day};
  return sys_seconds{sys_days{ymd.year() / ymd.month() / 1}}.time_since_epoch().count();
}

Timestamp next_month(Timestamp start) {
  using namespace std::chrono;
  const year_month_day ymd{floor<days>(sys_seconds{seconds{start}})};
  const auto next = (ymd.year() / ymd.month() + months{1}) / 1;
  return sys_seconds{sys_days{next}}.time_since_epoch().count();
}

std::array<double, kNumCategories> shares_of(const std::array<Count, kNumCategories>& c) {
  Count total = 0;
  for (Count x : c) total += x;
  std::array<double, kNumCategories> out{};
  if (total == 0) return out;
  for (std::size_t i = 0; i < kNumCategories; ++i) out[i] = static_cast<double>(c[i]) / static_cast<double>(total);
  return out;
}

template <std::size_t N>
void mean_std(const std::vector<std::array<double, N>>& samples, std::array<double, N>& mean,
              std::array<double, N>& sd) {
  const auto n = static_cast<double>(samples.size());
  mean.fill(0);
  sd.fill(0);
  for (const auto& s : samples) {
    for (std::size_t i = 0; i < N; ++i) mean[i] += s[i];
  }
  for (auto& m : mean) m /= n;
  for (const auto& s : samples) {
    for (std::size_t i = 0; i < N; ++i) sd[i] += (s[i] - mean[i]) * (s[i] - mean[i]);
  }
  for (auto& v : sd) v = std::sqrt(v / n);
}

}  // namespace

WindowSpec WindowSpec::fixed(Seconds width, std::optional<Timestamp> origin) {
  if (width <= 0) throw std::invalid_argument("window width must be positive");
  return {Mode::Fixed, width, origin};
}

WindowSpec WindowSpec::parse(std::string_view text) {
  if (text == "monthly") return monthly();
  Seconds width = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), width);
  if (text.empty() || ec != std::errc{} || p != text.data() + text.size()) {
    throw std::invalid_argument("window must be 'monthly' or a number of seconds: " + std::string(text));
  }
  return fixed(width);
}

std::string WindowSpec::to_string() const {
  if (mode == Mode::Monthly) return "monthly";
  std::string s = std::to_string(width);
  if (origin) s += "@" + std::to_string(*origin);
  return s;
}

std::vector<std::pair<Timestamp, Timestamp>> window_bounds(const WindowSpec& spec, Timestamp first, Timestamp last) {
  std::vector<std::pair<Timestamp, Timestamp>> out;
  if (last < first) return out;
  if (spec.mode == WindowSpec::Mode::Monthly) {
    for (Timestamp a = month_start(first); a <= last;) {
      const Timestamp b = next_month(a);
      out.emplace_back(a, b);
      a = b;
    }
    return out;
  }
  if (spec.width <= 0) throw std::invalid_argument("window width must be positive");
  const Timestamp origin = spec.origin.value_or(first);
  for (Timestamp a = origin + floor_div(first - origin, spec.width) * spec.width; a <= last; a += spec.width) {
    out.emplace_back(a, a + spec.width);
  }
  return out;
}

WindowSeries windowed_counts(const EdgeList& edges, const WindowSpec& spec, Seconds delta, int threads,
                             bool attribute_boundary) {
  if (delta < 0) throw std::invalid_argument("delta must be non-negative");
  WindowSeries series{spec, delta, attribute_boundary, {}};
  if (edges.empty()) return series;
  const auto& e = edges.edges;
  auto position = [&](Timestamp t) {
    return static_cast<std::size_t>(
        std::lower_bound(e.begin(), e.end(), t, [](const TemporalEdge& x, Timestamp v) { return x.t < v; }) -
        e.begin());
  };
  std::vector<NodeId> src, dst;
  std::vector<Timestamp> t;
  for (const auto& x : e) {
    src.push_back(x.src);
    dst.push_back(x.dst);
    t.push_back(x.t);
  }
  const std::size_t n = edges.nodes.size();
  auto count_range = [&](std::size_t lo, std::size_t hi) {
    if (hi - lo < 3) {
      MotifMatrix m;
      m.delta = delta;
      return m;
    }
    const std::span<const NodeId> s(src), d(dst);
    const std::span<const Timestamp> ts(t);
    return count_global(TemporalGraph::build(n, s.subspan(lo, hi - lo), d.subspan(lo, hi - lo), ts.subspan(lo, hi - lo)),
                        delta, threads);
  };

  for (auto [a, b] : window_bounds(spec, e.front().t, e.back().t)) {
    WindowRecord w;
    w.start = a;
    w.end = b;
    const std::size_t lo = position(a), hi = position(b);
    w.tx_count = hi - lo;
    if (attribute_boundary) {
      // Motifs whose first edge lies in [a, b) end before b + delta.
      const std::size_t tail = position(b + delta);
      w.counts = count_range(lo, tail);
      const auto spill = count_range(hi, tail);
      for (std::size_t s = 0; s < kGlobalCells; ++s) w.counts.counts[s] -= spill.counts[s];
    } else {
      w.counts = count_range(lo, hi);
    }
    w.categories = category_totals(w.counts);
    w.shares = shares_of(w.categories);
    series.windows.push_back(w);
  }
  return series;
}

std::vector<Seconds> default_sweep_grid() { return delta_range(3600, 168 * 3600, 3600); }

std::vector<Seconds> delta_range(Seconds start, Seconds stop, Seconds step) {
  if (step <= 0) throw std::invalid_argument("delta range step must be positive");
  if (start < 0 || stop < start) throw std::invalid_argument("delta range must satisfy 0 <= start <= stop");
  std::vector<Seconds> out;
  for (Seconds d = start; d <= stop; d += step) out.push_back(d);
  return out;
}

DeltaSweepSeries delta_sweep(const EdgeList& edges, std::span<const Seconds> grid,
                             const std::optional<ShuffleConfig>& nulls, int threads) {
  check_deltas(grid);
  const std::size_t K = grid.size();
  const CountRequest request{std::vector<Seconds>(grid.begin(), grid.end()), false, threads};

  DeltaSweepSeries out;
  out.grid = request.deltas;
  auto real = count_motifs(TemporalGraph::build(edges), request);
  out.timings = real.timings;
  out.cumulative = std::move(real.global);
  out.increments.assign(K, {});
  out.category_increments.assign(K, {});
  for (std::size_t k = 0; k < K; ++k) {
    out.category_cumulative.push_back(category_totals(out.cumulative[k]));
    if (k == 0) continue;
    for (std::size_t s = 0; s < kGlobalCells; ++s) {
      out.increments[k][s] = out.cumulative[k].counts[s] - out.cumulative[k - 1].counts[s];
    }
    for (std::size_t c = 0; c < kNumCategories; ++c) {
      out.category_increments[k][c] = out.category_cumulative[k][c] - out.category_cumulative[k - 1][c];
    }
  }

  if (nulls) {
    const auto runs = null_counts(edges, *nulls, request);
    SweepNullStats st;
    st.realizations = runs.size();
    st.seed = nulls->seed;
    st.mean.assign(K, {});
    st.std.assign(K, {});
    st.category_mean.assign(K, {});
    st.category_std.assign(K, {});
    for (std::size_t k = 1; k < K; ++k) {
      std::vector<std::array<double, kGlobalCells>> cells;
      std::vector<std::array<double, kNumCategories>> cats;
      for (const auto& r : runs) {
        std::array<double, kGlobalCells> inc{};
        for (std::size_t s = 0; s < kGlobalCells; ++s) {
          inc[s] = static_cast<double>(r.global[k].counts[s] - r.global[k - 1].counts[s]);
        }
        cells.push_back(inc);
        const auto hi = category_totals(r.global[k]), lo = category_totals(r.global[k - 1]);
        std::array<double, kNumCategories> cinc{};
        for (std::size_t c = 0; c < kNumCategories; ++c) cinc[c] = static_cast<double>(hi[c] - lo[c]);
        cats.push_back(cinc);
      }
      mean_std(cells, st.mean[k], st.std[k]);
      mean_std(cats, st.category_mean[k], st.category_std[k]);
    }
    out.nulls = std::move(st);
  }
  return out;
}

}  // namespace tmotif
