#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tmotif/analytics.hpp"
#include "tmotif/ingest.hpp"
#include "tmotif/motif_engine.hpp"
#include "tmotif/null_models.hpp"

namespace tmotif {

struct WindowSpec {
  enum class Mode { Monthly, Fixed };
  Mode mode = Mode::Monthly;
  /// Fixed mode only.
  Seconds width = 0;
  /// Fixed mode only: a window boundary; defaults to the first timestamp.
  std::optional<Timestamp> origin;

  static WindowSpec monthly() { return {}; }
  static WindowSpec fixed(Seconds width, std::optional<Timestamp> origin = std::nullopt);
  /// "monthly" or a positive number of seconds.
  static WindowSpec parse(std::string_view text);
  std::string to_string() const;
};

/// Half-open [start, end) windows covering [first, last]; empty windows in
/// between are kept. Months are UTC calendar months.
std::vector<std::pair<Timestamp, Timestamp>> window_bounds(const WindowSpec& spec, Timestamp first, Timestamp last);

struct WindowRecord {
  Timestamp start = 0;
  Timestamp end = 0;
  Count tx_count = 0;
  MotifMatrix counts;
  std::array<Count, kNumCategories> categories{};
  /// Category share of the window's motifs; all 0 when it has none.
  std::array<double, kNumCategories> shares{};
};

struct WindowSeries {
  WindowSpec spec;
  Seconds delta = 0;
  bool attribute_boundary = false;
  std::vector<WindowRecord> windows;
};

/// Counts each window on its own graph, so motifs crossing a boundary are
/// dropped. With `attribute_boundary` a motif is instead credited to the
/// window holding its first edge, and the windows sum to the global count.
WindowSeries windowed_counts(const EdgeList& edges, const WindowSpec& spec, Seconds delta, int threads = 0,
                             bool attribute_boundary = false);

/// Increment statistics over null realizations, one entry per grid point
/// after the first.
struct SweepNullStats {
  std::size_t realizations = 0;
  std::uint64_t seed = 0;
  std::vector<std::array<double, kGlobalCells>> mean, std;
  std::vector<std::array<double, kNumCategories>> category_mean, category_std;
};

struct DeltaSweepSeries {
  std::vector<Seconds> grid;
  std::vector<MotifMatrix> cumulative;
  std::vector<std::array<Count, kNumCategories>> category_cumulative;
  /// increments[k] = cumulative[k] - cumulative[k-1]; entry 0 is unused.
  std::vector<std::array<Count, kGlobalCells>> increments;
  std::vector<std::array<Count, kNumCategories>> category_increments;
  std::optional<SweepNullStats> nulls;
  CountTimings timings;
};

/// 3600, 7200, ..., 604800.
std::vector<Seconds> default_sweep_grid();
/// start, start+step, ... up to and including stop.
std::vector<Seconds> delta_range(Seconds start, Seconds stop, Seconds step);

DeltaSweepSeries delta_sweep(const EdgeList& edges, std::span<const Seconds> grid,
                             const std::optional<ShuffleConfig>& nulls = std::nullopt, int threads = 0);

}  // namespace tmotif
