#include <random>

#include "doctest.h"
#include "support/generators.hpp"
#include "tmotif/temporal_analysis.hpp"

using namespace tmotif;
using tmotif::testing::edges_from;

namespace {

constexpr Timestamp kDec2020 = 1606780800;
constexpr Timestamp kJan2021 = 1609459200;
constexpr Timestamp kFeb2021 = 1612137600;
constexpr Timestamp kMar2021 = 1614556800;
constexpr Timestamp kFeb2020 = 1580515200;
constexpr Timestamp kMar2020 = 1583020800;

MotifMatrix sum_windows(const WindowSeries& s) {
  MotifMatrix m;
  m.delta = s.delta;
  for (const auto& w : s.windows) m += w.counts;
  return m;
}

}  // namespace

TEST_CASE("monthly window bounds in UTC") {
  const auto b = window_bounds(WindowSpec::monthly(), kDec2020 + 86400 * 20, kFeb2021 + 5);
  REQUIRE(b.size() == 3);
  CHECK(b[0] == std::pair{kDec2020, kJan2021});
  CHECK(b[1] == std::pair{kJan2021, kFeb2021});
  CHECK(b[2] == std::pair{kFeb2021, kMar2021});
  const auto leap = window_bounds(WindowSpec::monthly(), kFeb2020 + 10, kFeb2020 + 20);
  REQUIRE(leap.size() == 1);
  CHECK(leap[0].second == kMar2020);
  const auto pre_epoch = window_bounds(WindowSpec::monthly(), -100, -50);
  REQUIRE(pre_epoch.size() == 1);
  CHECK(pre_epoch[0] == std::pair<Timestamp, Timestamp>{-2678400, 0});
}

TEST_CASE("fixed window bounds") {
  const auto b = window_bounds(WindowSpec::fixed(10), 3, 25);
  REQUIRE(b.size() == 3);
  CHECK(b[0] == std::pair<Timestamp, Timestamp>{3, 13});
  CHECK(b[2] == std::pair<Timestamp, Timestamp>{23, 33});
  const auto aligned = window_bounds(WindowSpec::fixed(10, 0), 3, 25);
  CHECK(aligned.front() == std::pair<Timestamp, Timestamp>{0, 10});
  CHECK(aligned.back() == std::pair<Timestamp, Timestamp>{20, 30});
  CHECK_THROWS(WindowSpec::fixed(0));
  CHECK(WindowSpec::parse("monthly").mode == WindowSpec::Mode::Monthly);
  CHECK(WindowSpec::parse("3600").width == 3600);
  CHECK_THROWS(WindowSpec::parse("weekly"));
}

TEST_CASE("single month reproduces the global count") {
  std::mt19937_64 rng(1);
  EdgeListBuilder b;
  for (int i = 0; i < 300; ++i) {
    b.add(std::to_string(rng() % 9), std::to_string(9 + rng() % 9), kJan2021 + static_cast<Timestamp>(rng() % 2000000));
  }
  const auto el = std::move(b).finish();
  const auto s = windowed_counts(el, WindowSpec::monthly(), 7200, 1);
  REQUIRE(s.windows.size() == 1);
  CHECK(s.windows[0].counts == count_global(TemporalGraph::build(el), 7200));
  CHECK(s.windows[0].tx_count == 300);
  double share = 0;
  for (double x : s.windows[0].shares) share += x;
  CHECK(share == doctest::Approx(1.0));
}

TEST_CASE("separated monthly clusters sum to the global count") {
  std::mt19937_64 rng(2);
  EdgeListBuilder b;
  for (Timestamp base : {kJan2021 + 86400, kMar2021 + 86400}) {
    for (int i = 0; i < 150; ++i) {
      b.add(std::to_string(rng() % 9), std::to_string(9 + rng() % 9), base + static_cast<Timestamp>(rng() % 86400));
    }
  }
  const auto el = std::move(b).finish();
  const auto s = windowed_counts(el, WindowSpec::monthly(), 3600, 1);
  REQUIRE(s.windows.size() == 3);
  CHECK(s.windows[1].tx_count == 0);
  CHECK(s.windows[1].counts.total() == 0);
  for (double x : s.windows[1].shares) CHECK(x == 0);
  CHECK(sum_windows(s) == count_global(TemporalGraph::build(el), 3600));
}

TEST_CASE("a triple across a month boundary is dropped by default") {
  const auto el = edges_from({{"a", "b", kFeb2021 - 1800}, {"a", "b", kFeb2021}, {"a", "b", kFeb2021 + 1200}});
  CHECK(count_global(TemporalGraph::build(el), 3600).total() == 1);
  const auto dropped = windowed_counts(el, WindowSpec::monthly(), 3600, 1);
  REQUIRE(dropped.windows.size() == 2);
  CHECK(sum_windows(dropped).total() == 0);
  const auto credited = windowed_counts(el, WindowSpec::monthly(), 3600, 1, true);
  CHECK(credited.windows[0].counts.total() == 1);
  CHECK(credited.windows[1].counts.total() == 0);
}

TEST_CASE("window sums never exceed the global count; boundary mode matches it") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 10; ++rep) {
    const auto el = tmotif::testing::random_edges(rng, {10, 300, 5000, rep % 2 == 0});
    const auto global = count_global(TemporalGraph::build(el), 300);
    const auto w = windowed_counts(el, WindowSpec::fixed(700), 300, 1);
    CHECK(sum_windows(w).dominated_by(global));
    Count tx = 0;
    for (const auto& x : w.windows) tx += x.tx_count;
    CHECK(tx == el.size());
    CHECK(sum_windows(windowed_counts(el, WindowSpec::fixed(700), 300, 1, true)) == global);
  }
}

TEST_CASE("delta ranges") {
  CHECK(delta_range(3600, 604800, 3600).size() == 168);
  CHECK(default_sweep_grid() == delta_range(3600, 604800, 3600));
  CHECK(delta_range(5, 5, 1) == std::vector<Seconds>{5});
  CHECK(delta_range(0, 10, 4) == std::vector<Seconds>{0, 4, 8});
  CHECK_THROWS(delta_range(10, 5, 1));
  CHECK_THROWS(delta_range(0, 5, 0));
}

TEST_CASE("sweep with a single grid point") {
  const auto el = edges_from({{"a", "b", 0}, {"a", "b", 10}, {"a", "b", 20}});
  const std::vector<Seconds> grid{3600};
  const auto s = delta_sweep(el, grid);
  REQUIRE(s.cumulative.size() == 1);
  CHECK(s.cumulative[0].total() == 1);
  CHECK_FALSE(s.nulls.has_value());
  CHECK_THROWS(delta_sweep(el, std::vector<Seconds>{20, 10}));
}

TEST_CASE("sweep increments and their sum") {
  std::mt19937_64 rng(4);
  const auto el = tmotif::testing::random_edges(rng, {10, 250, 20000, false});
  const auto grid = delta_range(0, 30000, 1000);
  const auto s = delta_sweep(el, grid);
  for (std::size_t c = 0; c < kGlobalCells; ++c) {
    Count sum = s.cumulative[0].counts[c];
    for (std::size_t k = 1; k < grid.size(); ++k) {
      CHECK(s.cumulative[k - 1].counts[c] <= s.cumulative[k].counts[c]);
      sum += s.increments[k][c];
      if (grid[k] > 20000) CHECK(s.increments[k][c] == 0);
    }
    CHECK(sum == s.cumulative.back().counts[c]);
  }
  for (std::size_t k = 0; k < grid.size(); ++k) CHECK(s.category_cumulative[k] == category_totals(s.cumulative[k]));
}

TEST_CASE("a 7200 s triple shows up exactly at the 2 h increment") {
  const auto el = edges_from({{"a", "b", 0}, {"b", "c", 3000}, {"c", "a", 7200}});
  const auto s = delta_sweep(el, default_sweep_grid());
  for (std::size_t k = 1; k < s.grid.size(); ++k) {
    Count inc = 0;
    for (Count x : s.increments[k]) inc += x;
    CHECK(inc == (s.grid[k] == 7200 ? 1u : 0u));
  }
  CHECK(s.cumulative[0].total() == 0);
}

TEST_CASE("sweep null statistics") {
  std::mt19937_64 rng(5);
  const auto el = tmotif::testing::random_edges(rng, {8, 150, 5000, false});
  const std::vector<Seconds> grid{100, 500, 1000};
  const ShuffleConfig cfg{3, 4};
  const auto s = delta_sweep(el, grid, cfg, 1);
  REQUIRE(s.nulls.has_value());
  CHECK(s.nulls->realizations == 4);
  const auto runs = null_counts(el, cfg, {grid, false, 1});
  for (std::size_t k = 1; k < grid.size(); ++k) {
    for (std::size_t c = 0; c < kGlobalCells; ++c) {
      double mean = 0;
      for (const auto& r : runs) mean += static_cast<double>(r.global[k].counts[c] - r.global[k - 1].counts[c]);
      mean /= 4;
      double var = 0;
      for (const auto& r : runs) {
        const double d = static_cast<double>(r.global[k].counts[c] - r.global[k - 1].counts[c]) - mean;
        var += d * d;
      }
      CHECK(s.nulls->mean[k][c] == doctest::Approx(mean));
      CHECK(s.nulls->std[k][c] == doctest::Approx(std::sqrt(var / 4)));
    }
  }
}
