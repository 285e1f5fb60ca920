#pragma once

#include <cmath>
#include <limits>
#include <span>

namespace botscore {

// Missing-value sentinel. Resolved by the model's imputation table, never by
// the extractors.
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
inline bool is_missing(double v) { return std::isnan(v); }

enum class BinScale { linear, log };

inline constexpr int kDefaultEntropyBins = 10;

struct DescriptiveStats {
    int count = 0;
    double min = kMissing;
    double max = kMissing;
    double mean = kMissing;
    double median = kMissing;
    double std = kMissing;       // population
    double skewness = kMissing;
    double kurtosis = kMissing;  // excess
    double entropy_bits = kMissing;
};

// Population moments. Skewness and kurtosis are 0 when std is 0. For an empty
// input every field except count is kMissing.
DescriptiveStats describe(std::span<const double> values, BinScale entropy_scale = BinScale::linear,
                          int entropy_bins = kDefaultEntropyBins);

// Shannon entropy (bits) of equal-width bin counts over [min, max].
// Log scale bins log(v) for v > 0; values <= 0 share one underflow bin that
// takes one of the `bins` slots. 0 for empty or constant input.
double histogram_entropy(std::span<const double> values, int bins, BinScale scale = BinScale::linear);

// Entropy (bits) of a distribution given by raw counts.
double count_entropy(std::span<const double> counts);

// (sigma - mu) / (sigma + mu); -1 for perfectly periodic intervals.
// Throws InsufficientData for fewer than two intervals; kMissing when every
// interval is zero.
double burstiness(std::span<const double> intervals);

// Median of a copy; kMissing if empty.
double median_of(std::span<const double> values);

}  // namespace botscore
