#include "tmotif/null_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "tmotif/graph.hpp"

namespace tmotif {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

void ShuffleConfig::validate() const {
  if (realizations == 0) throw std::invalid_argument("realizations must be at least 1");
}

std::uint64_t ShuffleConfig::realization_seed(std::size_t index) const {
  return splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(index));
}

// Lemire's multiply-shift rejection method.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("bound must be positive");
  unsigned __int128 m = static_cast<unsigned __int128>(rng()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(rng()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

EdgeList shuffle_timestamps(const EdgeList& edges, std::uint64_t seed) {
  EdgeList out = edges;
  auto& e = out.edges;
  std::sort(e.begin(), e.end(), [](const TemporalEdge& a, const TemporalEdge& b) { return a.seq < b.seq; });

  struct Stamp {
    Timestamp t;
    std::optional<std::int64_t> block;
  };
  std::vector<Stamp> stamps;
  stamps.reserve(e.size());
  for (const auto& x : e) stamps.push_back({x.t, x.block});
  std::mt19937_64 rng(seed);
  seeded_shuffle(std::span<Stamp>(stamps), rng);
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i].t = stamps[i].t;
    e[i].block = stamps[i].block;
  }
  std::stable_sort(e.begin(), e.end(), [](const TemporalEdge& a, const TemporalEdge& b) { return a.t < b.t; });
  for (std::size_t i = 0; i < e.size(); ++i) e[i].seq = i;
  return out;
}

EdgeList shuffle_intra_block(const EdgeList& edges, std::uint64_t seed) {
  EdgeList out = edges;
  auto& e = out.edges;
  const auto bounds = tie_group_bounds(out);
  std::mt19937_64 rng(seed);
  for (std::size_t g = 0; g + 1 < bounds.size(); ++g) {
    const std::size_t begin = bounds[g], end = bounds[g + 1];
    if (end - begin < 2) continue;
    seeded_shuffle(std::span<TemporalEdge>(e.data() + begin, end - begin), rng);
  }
  // Positions inside a group keep their original seq values, so (t, seq)
  // order is preserved and matches the new arrangement.
  std::vector<std::uint64_t> seqs;
  for (std::size_t g = 0; g + 1 < bounds.size(); ++g) {
    const std::size_t begin = bounds[g], end = bounds[g + 1];
    if (end - begin < 2) continue;
    seqs.clear();
    for (std::size_t i = begin; i < end; ++i) seqs.push_back(e[i].seq);
    std::sort(seqs.begin(), seqs.end());
    for (std::size_t i = begin; i < end; ++i) e[i].seq = seqs[i - begin];
  }
  return out;
}

std::vector<CountResult> null_counts(const EdgeList& edges, const ShuffleConfig& config,
                                     const CountRequest& request) {
  config.validate();
  std::vector<CountResult> out;
  out.reserve(config.realizations);
  for (std::size_t r = 0; r < config.realizations; ++r) {
    const auto shuffled = shuffle_timestamps(edges, config.realization_seed(r));
    out.push_back(count_motifs(TemporalGraph::build(shuffled), request));
  }
  return out;
}

RatioMatrix null_ratio(const MotifMatrix& real, std::span<const MotifMatrix> nulls) {
  if (nulls.empty()) throw std::invalid_argument("null_ratio needs at least one realization");
  for (const auto& n : nulls) {
    if (n.delta != real.delta) throw std::invalid_argument("null realization delta differs from real delta");
  }
  RatioMatrix r;
  r.delta = real.delta;
  r.real = real;
  r.realizations = nulls.size();
  const double count = static_cast<double>(nulls.size());
  for (std::size_t c = 0; c < 36; ++c) {
    double sum = 0;
    for (const auto& n : nulls) sum += static_cast<double>(n.counts[c]);
    const double mean = sum / count;
    double sq = 0;
    for (const auto& n : nulls) {
      const double d = static_cast<double>(n.counts[c]) - mean;
      sq += d * d;
    }
    r.null_mean[c] = mean;
    r.null_std[c] = std::sqrt(sq / count);
    const auto x = static_cast<double>(real.counts[c]);
    if (mean == 0) {
      r.ratio[c] = x == 0 ? 1.0 : std::numeric_limits<double>::infinity();
    } else {
      r.ratio[c] = x / mean;
    }
  }
  return r;
}

IntraBlockReport intra_block_deviation(const EdgeList& edges, Seconds delta, const ShuffleConfig& config,
                                       int threads) {
  config.validate();
  IntraBlockReport rep;
  rep.delta = delta;
  const auto order = validate_order(edges);
  rep.tie_groups = order.groups_with_ties;
  rep.largest_group = order.largest_group;
  rep.block_order = count_global(TemporalGraph::build(edges), delta, threads);
  for (std::size_t r = 0; r < config.realizations; ++r) {
    const auto shuffled = shuffle_intra_block(edges, config.realization_seed(r));
    rep.shuffled.push_back(count_global(TemporalGraph::build(shuffled), delta, threads));
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t c = 0; c < 36; ++c) {
    const Count b = rep.block_order.counts[c];
    if (b == 0) {
      rep.max_deviation[c] = nan;
      rep.mean_deviation[c] = nan;
      continue;
    }
    double mx = 0, sum = 0;
    for (const auto& s : rep.shuffled) {
      const double d = std::abs(static_cast<double>(s.counts[c]) - static_cast<double>(b)) / static_cast<double>(b);
      mx = std::max(mx, d);
      sum += d;
    }
    rep.max_deviation[c] = mx;
    rep.mean_deviation[c] = sum / static_cast<double>(rep.shuffled.size());
    rep.max_overall = std::max(rep.max_overall, mx);
  }
  return rep;
}

}  // namespace tmotif
