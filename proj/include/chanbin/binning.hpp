#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "chanbin/channel.hpp"

namespace chanbin {

/// Contiguous value range [lo, hi] of a channel histogram that one level of
/// the recursive binning operates on. Both endpoints are occupied, so every
/// value in the range that has pixels belongs to the set. Non-owning: the
/// histogram must outlive the working set.
class WorkingSet {
 public:
  /// The whole channel. Throws Errc::EmptyWorkingSet on an empty histogram.
  explicit WorkingSet(const ChannelHistogram& hist);
  /// Throws Errc::EmptyWorkingSet unless lo <= hi and both ends are occupied.
  WorkingSet(const ChannelHistogram& hist, int lo, int hi);

  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return hi_; }
  const ChannelHistogram& histogram() const noexcept { return *hist_; }

  std::uint64_t count(int value) const { return hist_->count(value); }
  int distinct_count() const noexcept;
  std::uint64_t pixel_count() const noexcept;

  friend bool operator==(const WorkingSet& a, const WorkingSet& b) noexcept {
    return a.hist_ == b.hist_ && a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  const ChannelHistogram* hist_;
  int lo_;
  int hi_;
};

/// Bin width as an exact fraction num/den. After the telescoping sum,
/// num = hi - lo and den = m - 1, so both stay small integers.
struct Rho {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_zero() const noexcept { return num == 0; }
  bool below_one() const noexcept { return num < den; }
};

/// A value bin [range_lo, range_hi). A single-value bin finalised without
/// binning has range_lo == range_hi == its value.
struct ColorBin {
  double range_lo = 0.0;
  double range_hi = 0.0;
  std::uint64_t count = 0;
  std::uint64_t value_sum = 0;
  int min_value = 0;  // least member value, valid when count > 0
  int max_value = 0;  // greatest member value, valid when count > 0

  bool empty() const noexcept { return count == 0; }
  double centroid() const noexcept {
    return static_cast<double>(value_sum) / static_cast<double>(count);
  }

  friend bool operator==(const ColorBin&, const ColorBin&) = default;
};

struct BinningConfig {
  ValueMode rho_mode = ValueMode::Distinct;
  int max_recursion_depth = 300;
};

/// Average consecutive difference of the working set's ascending values,
/// in the telescoped form (hi - lo) / (m - 1). Zero when m == 1.
Rho compute_rho(const WorkingSet& ws, ValueMode mode);

/// floor((hi - lo) / rho) + 1 half-open bins starting at lo, including the
/// empty ones. Throws Errc::NonPositiveRho.
std::vector<ColorBin> assign_bins(const WorkingSet& ws, Rho rho);

/// One working set per maximal run of consecutive non-empty bins, ascending.
std::vector<WorkingSet> segment_runs(std::span<const ColorBin> bins, const WorkingSet& ws);

struct BinningTrace {
  int max_depth = 0;
  std::size_t recursions = 0;      // working sets split on empty bins
  std::size_t rho_below_one = 0;   // working sets finalised by the rho < 1 rule
};

/// Phase one: bin each working set with its own rho and recurse on the runs
/// between empty bins until a level has none. Returns the non-empty bins in
/// ascending value order. Throws Errc::RecursionLimitExceeded or
/// Errc::InvalidConfig.
std::vector<ColorBin> channelized_binning(const ChannelHistogram& hist, const BinningConfig& config);
std::vector<ColorBin> channelized_binning(const ChannelHistogram& hist, const BinningConfig& config,
                                          BinningTrace& trace);

}  // namespace chanbin
