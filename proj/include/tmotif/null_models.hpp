#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "tmotif/ingest.hpp"
#include "tmotif/motif_engine.hpp"

namespace tmotif {

struct ShuffleConfig {
  std::uint64_t seed = 0;
  std::size_t realizations = 10;

  /// Throws std::invalid_argument when realizations is 0.
  void validate() const;
  /// Seed of realization `index`, a pure function of (seed, index).
  std::uint64_t realization_seed(std::size_t index) const;
};

/// Uniform integer in [0, bound) from a 64-bit engine, identical on every
/// platform (unlike std::uniform_int_distribution).
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound);

/// Fisher-Yates shuffle driven by `bounded_draw`.
template <typename T>
void seeded_shuffle(std::span<T> items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(bounded_draw(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

/// Permutes timestamps (with their block ids) among transactions while every
/// row keeps its (src, dst, weight). Rows are then re-sorted by time, ties in
/// original row order, and get fresh seq values 0..m-1.
EdgeList shuffle_timestamps(const EdgeList& edges, std::uint64_t seed);

/// Permutes the order of transactions inside each tie group (equal time and
/// block id). Timestamps are untouched.
EdgeList shuffle_intra_block(const EdgeList& edges, std::uint64_t seed);

/// Counts on `config.realizations` timestamp-shuffled copies of `edges`.
std::vector<CountResult> null_counts(const EdgeList& edges, const ShuffleConfig& config,
                                     const CountRequest& request);

struct RatioMatrix {
  Seconds delta = 0;
  MotifMatrix real;
  std::size_t realizations = 0;
  /// real / mean(null); 0/0 is 1 and x/0 is +inf.
  std::array<double, 36> ratio{};
  std::array<double, 36> null_mean{};
  /// Population standard deviation over realizations.
  std::array<double, 36> null_std{};
};

/// Throws std::invalid_argument if `nulls` is empty or any delta differs.
RatioMatrix null_ratio(const MotifMatrix& real, std::span<const MotifMatrix> nulls);

struct IntraBlockReport {
  Seconds delta = 0;
  MotifMatrix block_order;
  std::vector<MotifMatrix> shuffled;
  std::size_t tie_groups = 0;
  std::size_t largest_group = 0;
  /// Per cell over realizations of |shuffled - block_order| / block_order;
  /// NaN where the block-order count is 0.
  std::array<double, 36> max_deviation{};
  std::array<double, 36> mean_deviation{};
  /// Largest per-cell maximum over cells with a nonzero block-order count.
  double max_overall = 0;
};

IntraBlockReport intra_block_deviation(const EdgeList& edges, Seconds delta, const ShuffleConfig& config,
                                       int threads = 0);

}  // namespace tmotif
