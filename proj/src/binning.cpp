#include "chanbin/binning.hpp"

#include <algorithm>
#include <string>

#include "chanbin/error.hpp"

namespace chanbin {

WorkingSet::WorkingSet(const ChannelHistogram& hist) : hist_(&hist), lo_(0), hi_(0) {
  if (hist.total() == 0) throw Error(Errc::EmptyWorkingSet, "histogram holds no pixels");
  lo_ = hist.min_value();
  hi_ = hist.max_value();
}

WorkingSet::WorkingSet(const ChannelHistogram& hist, int lo, int hi) : hist_(&hist), lo_(lo), hi_(hi) {
  if (lo < 0 || hi >= ChannelHistogram::kLevels || lo > hi || hist.count(lo) == 0 ||
      hist.count(hi) == 0)
    throw Error(Errc::EmptyWorkingSet,
                "range [" + std::to_string(lo) + "," + std::to_string(hi) + "] has unoccupied ends");
}

int WorkingSet::distinct_count() const noexcept {
  int n = 0;
  for (int v = lo_; v <= hi_; ++v) n += hist_->count(v) > 0;
  return n;
}

std::uint64_t WorkingSet::pixel_count() const noexcept {
  std::uint64_t n = 0;
  for (int v = lo_; v <= hi_; ++v) n += hist_->count(v);
  return n;
}

Rho compute_rho(const WorkingSet& ws, ValueMode mode) {
  const std::uint64_t m =
      mode == ValueMode::Distinct ? static_cast<std::uint64_t>(ws.distinct_count()) : ws.pixel_count();
  if (m == 0) throw Error(Errc::EmptyWorkingSet, "working set holds no pixels");
  if (m == 1) return {0, 1};
  // The consecutive differences of the ascending sequence telescope to hi - lo.
  return {ws.hi() - ws.lo(), static_cast<std::int64_t>(m - 1)};
}

std::vector<ColorBin> assign_bins(const WorkingSet& ws, Rho rho) {
  if (rho.num <= 0 || rho.den <= 0)
    throw Error(Errc::NonPositiveRho, "bin width must be positive");

  const std::int64_t span = ws.hi() - ws.lo();
  const std::int64_t num_bins = span * rho.den / rho.num + 1;

  std::vector<ColorBin> bins(static_cast<std::size_t>(num_bins));
  for (std::int64_t i = 0; i < num_bins; ++i) {
    auto& bin = bins[static_cast<std::size_t>(i)];
    bin.range_lo = ws.lo() + static_cast<double>(i * rho.num) / static_cast<double>(rho.den);
    bin.range_hi = ws.lo() + static_cast<double>((i + 1) * rho.num) / static_cast<double>(rho.den);
  }

  for (int v = ws.lo(); v <= ws.hi(); ++v) {
    const auto n = ws.count(v);
    if (n == 0) continue;
    // floor((v - lo) / rho) on the integer lattice
    const auto index = static_cast<std::size_t>((v - ws.lo()) * rho.den / rho.num);
    auto& bin = bins[index];
    if (bin.count == 0) bin.min_value = v;
    bin.max_value = v;
    bin.count += n;
    bin.value_sum += n * static_cast<std::uint64_t>(v);
  }
  return bins;
}

std::vector<WorkingSet> segment_runs(std::span<const ColorBin> bins, const WorkingSet& ws) {
  std::vector<WorkingSet> runs;
  int run_lo = -1;
  int run_hi = -1;
  for (const ColorBin& bin : bins) {
    if (bin.empty()) {
      if (run_lo >= 0) runs.emplace_back(ws.histogram(), run_lo, run_hi);
      run_lo = -1;
      continue;
    }
    if (run_lo < 0) run_lo = bin.min_value;
    run_hi = bin.max_value;
  }
  if (run_lo >= 0) runs.emplace_back(ws.histogram(), run_lo, run_hi);
  return runs;
}

namespace {

ColorBin whole_set_bin(const WorkingSet& ws) {
  ColorBin bin;
  for (int v = ws.lo(); v <= ws.hi(); ++v) {
    const auto n = ws.count(v);
    bin.count += n;
    bin.value_sum += n * static_cast<std::uint64_t>(v);
  }
  bin.min_value = ws.lo();
  bin.max_value = ws.hi();
  bin.range_lo = ws.lo();
  bin.range_hi = ws.lo() == ws.hi() ? ws.lo() : ws.hi() + 1;
  return bin;
}

class Binner {
 public:
  Binner(const BinningConfig& config, BinningTrace& trace, std::vector<ColorBin>& out)
      : config_(config), trace_(trace), out_(out) {}

  void run(const WorkingSet& ws, int depth) {
    if (depth > config_.max_recursion_depth)
      throw Error(Errc::RecursionLimitExceeded,
                  "depth " + std::to_string(depth) + " on [" + std::to_string(ws.lo()) + "," +
                      std::to_string(ws.hi()) + "]");
    trace_.max_depth = std::max(trace_.max_depth, depth);

    if (ws.lo() == ws.hi()) {
      out_.push_back(whole_set_bin(ws));
      return;
    }
    const Rho rho = compute_rho(ws, config_.rho_mode);
    if (rho.below_one()) {
      ++trace_.rho_below_one;
      out_.push_back(whole_set_bin(ws));
      return;
    }

    auto bins = assign_bins(ws, rho);
    const bool has_empty = std::any_of(bins.begin(), bins.end(), [](const ColorBin& b) { return b.empty(); });
    if (!has_empty) {
      out_.insert(out_.end(), bins.begin(), bins.end());
      return;
    }
    ++trace_.recursions;
    for (const WorkingSet& run : segment_runs(bins, ws)) this->run(run, depth + 1);
  }

 private:
  const BinningConfig& config_;
  BinningTrace& trace_;
  std::vector<ColorBin>& out_;
};

}  // namespace

std::vector<ColorBin> channelized_binning(const ChannelHistogram& hist, const BinningConfig& config,
                                          BinningTrace& trace) {
  if (config.max_recursion_depth < ChannelHistogram::kLevels)
    throw Error(Errc::InvalidConfig, "max_recursion_depth must be at least 256");
  const WorkingSet all(hist);
  trace = {};
  std::vector<ColorBin> out;
  Binner(config, trace, out).run(all, 1);
  return out;
}

std::vector<ColorBin> channelized_binning(const ChannelHistogram& hist, const BinningConfig& config) {
  BinningTrace trace;
  return channelized_binning(hist, config, trace);
}

}  // namespace chanbin
