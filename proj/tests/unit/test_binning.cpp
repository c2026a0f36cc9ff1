#include <doctest.h>

#include <numeric>

#include "chanbin/binning.hpp"
#include "chanbin/error.hpp"
#include "naive_binning.hpp"
#include "generators.hpp"

using namespace chanbin;

namespace {

ChannelHistogram hist_of(std::initializer_list<std::pair<int, std::uint64_t>> entries) {
  ChannelHistogram h;
  for (auto [v, n] : entries) h.add(static_cast<std::uint8_t>(v), n);
  return h;
}

std::vector<std::vector<int>> members(const std::vector<ColorBin>& bins, const WorkingSet& ws, Rho rho) {
  std::vector<std::vector<int>> out(bins.size());
  for (int v = ws.lo(); v <= ws.hi(); ++v)
    if (ws.count(v) > 0) out[static_cast<std::size_t>((v - ws.lo()) * rho.den / rho.num)].push_back(v);
  return out;
}

}  // namespace

TEST_CASE("compute_rho examples") {
  const auto sevens = hist_of({{7, 13}});
  CHECK(compute_rho(WorkingSet(sevens), ValueMode::Distinct).value() == 0.0);
  CHECK(compute_rho(WorkingSet(sevens), ValueMode::AllPixels).value() == 0.0);

  const auto three = hist_of({{0, 1}, {10, 1}, {20, 1}});
  CHECK(compute_rho(WorkingSet(three), ValueMode::Distinct).value() == doctest::Approx(10.0));

  const auto dup = hist_of({{0, 2}, {10, 1}, {20, 1}});
  CHECK(compute_rho(WorkingSet(dup), ValueMode::AllPixels).value() == doctest::Approx(20.0 / 3.0).epsilon(1e-12));
  CHECK(compute_rho(WorkingSet(dup), ValueMode::Distinct).value() == doctest::Approx(10.0));
}

TEST_CASE("working set rejects unoccupied ends") {
  const auto h = hist_of({{3, 1}, {9, 1}});
  CHECK_THROWS_AS(WorkingSet(h, 2, 9), Error);
  CHECK_THROWS_AS(WorkingSet(ChannelHistogram{}), Error);
  CHECK_NOTHROW(WorkingSet(h, 3, 9));
}

TEST_CASE("assign_bins: six values at rho 40") {
  const auto h = hist_of({{0, 1}, {1, 1}, {2, 1}, {100, 1}, {101, 1}, {200, 1}});
  const WorkingSet ws(h);
  const Rho rho{40, 1};
  const auto bins = assign_bins(ws, rho);
  REQUIRE(bins.size() == 6);
  const auto m = members(bins, ws, rho);
  CHECK(m[0] == std::vector<int>{0, 1, 2});
  CHECK(m[1].empty());
  CHECK(m[2] == std::vector<int>{100, 101});
  CHECK(m[3].empty());
  CHECK(m[4].empty());
  CHECK(m[5] == std::vector<int>{200});
  CHECK(bins[2].range_lo == 80.0);
  CHECK(bins[2].range_hi == 120.0);

  const auto runs = segment_runs(bins, ws);
  REQUIRE(runs.size() == 3);
  CHECK(runs[0].lo() == 0);
  CHECK(runs[0].hi() == 2);
  CHECK(runs[1].lo() == 100);
  CHECK(runs[1].hi() == 101);
  CHECK(runs[2].lo() == 200);
  CHECK(runs[2].hi() == 200);
}

TEST_CASE("assign_bins: unit rho over three adjacent values") {
  const auto h = hist_of({{0, 1}, {1, 1}, {2, 1}});
  const auto bins = assign_bins(WorkingSet(h), Rho{1, 1});
  REQUIRE(bins.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(bins[i].count == 1);
    CHECK(bins[i].range_lo == static_cast<double>(i));
    CHECK(bins[i].range_hi == static_cast<double>(i + 1));
  }
  const auto runs = segment_runs(bins, WorkingSet(h));
  REQUIRE(runs.size() == 1);
  CHECK(runs[0] == WorkingSet(h));
}

TEST_CASE("assign_bins: rho wider than the span gives one bin") {
  const auto h = hist_of({{10, 4}, {30, 2}, {31, 1}});
  const auto bins = assign_bins(WorkingSet(h), Rho{22, 1});
  REQUIRE(bins.size() == 1);
  CHECK(bins[0].count == 7);
}

TEST_CASE("assign_bins rejects non-positive rho") {
  const auto h = hist_of({{1, 1}, {2, 1}});
  CHECK_THROWS_AS(assign_bins(WorkingSet(h), Rho{0, 1}), Error);
  CHECK_THROWS_AS(assign_bins(WorkingSet(h), Rho{-1, 1}), Error);
}

TEST_CASE("assign_bins places lattice boundary values in the upper bin") {
  // values 0,6,12,...,60 with one extra at 7: 12 distinct over span 60, rho = 60/11.
  ChannelHistogram h;
  for (int v = 0; v <= 60; v += 6) h.add(static_cast<std::uint8_t>(v));
  h.add(7);
  const WorkingSet ws(h);
  const Rho rho = compute_rho(ws, ValueMode::Distinct);
  CHECK(rho.num == 60);
  CHECK(rho.den == 11);
  const auto bins = assign_bins(ws, rho);
  CHECK(bins.size() == 12);  // floor(60 * 11 / 60) + 1
  // 60 sits exactly on the left edge of the last bin.
  CHECK(bins.back().count == 1);
  CHECK(bins.back().min_value == 60);
  CHECK(bins.back().range_lo == doctest::Approx(60.0));
}

TEST_CASE("channelized_binning: full trace example") {
  const auto h = hist_of({{0, 10}, {1, 5}, {2, 5}, {100, 30}, {101, 20}, {200, 30}});
  BinningTrace trace;
  const auto bins = channelized_binning(h, BinningConfig{}, trace);
  const std::vector<std::pair<int, std::uint64_t>> expected = {{0, 10}, {1, 5}, {2, 5}, {100, 30}, {101, 20}, {200, 30}};
  REQUIRE(bins.size() == expected.size());
  for (std::size_t i = 0; i < bins.size(); ++i) {
    CHECK(bins[i].centroid() == expected[i].first);
    CHECK(bins[i].count == expected[i].second);
  }
  CHECK(trace.recursions == 1);
  CHECK(trace.max_depth == 2);
  // the single-value run {200} is finalised as a degenerate bin
  CHECK(bins.back().range_lo == 200.0);
  CHECK(bins.back().range_hi == 200.0);
}

TEST_CASE("channelized_binning: constant channel") {
  const auto h = hist_of({{7, 98304}});
  const auto bins = channelized_binning(h, BinningConfig{});
  REQUIRE(bins.size() == 1);
  CHECK(bins[0].centroid() == 7.0);
  CHECK(bins[0].count == 98304);
}

TEST_CASE("channelized_binning: two equal spikes") {
  const auto h = hist_of({{237, 500}, {255, 500}});
  const WorkingSet ws(h);
  CHECK(compute_rho(ws, ValueMode::Distinct).value() == 18.0);
  const auto bins = channelized_binning(h, BinningConfig{});
  REQUIRE(bins.size() == 2);
  CHECK(bins[0].centroid() == 237.0);
  CHECK(bins[1].centroid() == 255.0);
  CHECK(bins[0].range_lo == 237.0);
  CHECK(bins[0].range_hi == 255.0);
  CHECK(bins[1].range_hi == 273.0);
}

TEST_CASE("channelized_binning: all-pixels mode stops when rho drops below one") {
  const auto h = hist_of({{0, 10}, {1, 5}, {2, 5}, {100, 30}});
  BinningConfig config;
  config.rho_mode = ValueMode::AllPixels;
  BinningTrace trace;
  const auto bins = channelized_binning(h, config, trace);
  // 50 pixels over a span of 100: rho = 100/49 > 1, bins of width ~2.04;
  // {0,1,2} share bin 0 and the run {0,1,2} (20 pixels) then has rho 2/19 < 1.
  REQUIRE(bins.size() == 2);
  CHECK(bins[0].count == 20);
  CHECK(bins[0].range_lo == 0.0);
  CHECK(bins[0].range_hi == 3.0);
  CHECK(bins[1].count == 30);
  CHECK(trace.rho_below_one == 1);
}

TEST_CASE("channelized_binning rejects a recursion budget below 256") {
  const auto h = hist_of({{1, 1}});
  BinningConfig config;
  config.max_recursion_depth = 100;
  CHECK_THROWS_AS(channelized_binning(h, config), Error);
}

TEST_CASE("property: telescoped rho equals the literal sum" * doctest::description("1000 random histograms, both modes")) {
  gen::Rng rng(101);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto h = gen::random_histogram(rng);
    const WorkingSet ws(h);
    for (auto mode : {ValueMode::Distinct, ValueMode::AllPixels}) {
      const double literal = oracle::literal_rho(sorted_values(h, mode));
      CHECK(compute_rho(ws, mode).value() == doctest::Approx(literal).epsilon(1e-12));
    }
  }
}

TEST_CASE("property: distinct-mode rho is at least one") {
  gen::Rng rng(102);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto h = gen::random_histogram(rng);
    if (h.distinct_count() < 2) continue;
    CHECK(compute_rho(WorkingSet(h), ValueMode::Distinct).value() >= 1.0);
    BinningTrace trace;
    channelized_binning(h, BinningConfig{}, trace);
    CHECK(trace.rho_below_one == 0);
  }
}

TEST_CASE("property: every split yields smaller runs, at least two") {
  gen::Rng rng(103);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto h = gen::random_histogram(rng);
    const WorkingSet ws(h);
    const Rho rho = compute_rho(ws, ValueMode::Distinct);
    if (rho.is_zero()) continue;
    const auto bins = assign_bins(ws, rho);
    CHECK_FALSE(bins.front().empty());
    CHECK_FALSE(bins.back().empty());
    const auto runs = segment_runs(bins, ws);
    const bool has_empty = std::any_of(bins.begin(), bins.end(), [](const ColorBin& b) { return b.empty(); });
    std::uint64_t pixels = 0;
    for (const auto& r : runs) pixels += r.pixel_count();
    CHECK(pixels == ws.pixel_count());
    if (has_empty) {
      CHECK(runs.size() >= 2);
      for (const auto& r : runs) CHECK(r.distinct_count() < ws.distinct_count());
    } else {
      REQUIRE(runs.size() == 1);
      CHECK(runs[0] == ws);
    }
  }
}

TEST_CASE("property: binning conserves pixels, orders bins and is deterministic") {
  gen::Rng rng(104);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto h = gen::random_histogram(rng);
    BinningTrace trace;
    const auto bins = channelized_binning(h, BinningConfig{}, trace);
    CHECK(trace.max_depth <= 256);
    std::uint64_t count = 0;
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < bins.size(); ++i) {
      CHECK(bins[i].count > 0);
      count += bins[i].count;
      sum += bins[i].value_sum;
      if (i > 0) {
        CHECK(bins[i - 1].max_value < bins[i].min_value);
        CHECK(bins[i - 1].range_lo < bins[i].range_lo);
      }
      // nominal intervals of sibling runs may overlap; occupied values may not
      CHECK(bins[i].range_lo <= bins[i].min_value);
      CHECK((bins[i].empty() || bins[i].max_value < bins[i].range_hi || bins[i].range_lo == bins[i].range_hi));
    }
    std::uint64_t expected_sum = 0;
    for (int v = 0; v < 256; ++v) expected_sum += h.count(v) * static_cast<std::uint64_t>(v);
    CHECK(count == h.total());
    CHECK(sum == expected_sum);
    CHECK(channelized_binning(h, BinningConfig{}) == bins);
  }
}

TEST_CASE("histogram binning matches the literal sorted-array procedure") {
  gen::Rng rng(105);
  for (int trial = 0; trial < 300; ++trial) {
    const auto values = gen::random_multiset(rng);
    const auto h = histogram_from_values(values);
    for (auto [mode, omode] : {std::pair{ValueMode::Distinct, oracle::Mode::Distinct},
                               std::pair{ValueMode::AllPixels, oracle::Mode::AllPixels}}) {
      BinningConfig config;
      config.rho_mode = mode;
      BinningTrace trace;
      const auto got = channelized_binning(h, config, trace);
      int depth = 0;
      const auto want = oracle::naive_binning(values, omode, &depth);
      REQUIRE(got.size() == want.size());
      CHECK(trace.max_depth == depth);
      for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].count == want[i].count);
        CHECK(got[i].value_sum == want[i].value_sum);
        CHECK(got[i].min_value == want[i].min_value);
        CHECK(got[i].max_value == want[i].max_value);
        CHECK(got[i].range_lo == doctest::Approx(want[i].range_lo).epsilon(1e-12));
        CHECK(got[i].range_hi == doctest::Approx(want[i].range_hi).epsilon(1e-12));
      }
    }
  }
}
