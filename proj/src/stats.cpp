#include "botscore/stats.hpp"

#include <algorithm>
#include <vector>

#include "botscore/errors.hpp"

namespace botscore {

double median_of(std::span<const double> values) {
    if (values.empty()) return kMissing;
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double count_entropy(std::span<const double> counts) {
    double total = 0.0;
    for (double c : counts) total += c;
    if (total <= 0.0) return 0.0;
    double h = 0.0;
    for (double c : counts) {
        if (c <= 0.0) continue;
        double p = c / total;
        h -= p * std::log2(p);
    }
    return h <= 0.0 ? 0.0 : h;
}

double histogram_entropy(std::span<const double> values, int bins, BinScale scale) {
    if (bins < 1) throw Error("histogram_entropy: bins must be >= 1");
    if (values.empty()) return 0.0;

    std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
    std::vector<double> binned;
    binned.reserve(values.size());
    int regular_bins = bins;
    if (scale == BinScale::log) {
        std::size_t underflow = 0;
        for (double v : values) {
            if (v > 0.0)
                binned.push_back(std::log(v));
            else
                ++underflow;
        }
        if (underflow > 0) {
            if (bins == 1) return 0.0;
            counts[0] = static_cast<double>(underflow);
            regular_bins = bins - 1;
        }
    } else {
        binned.assign(values.begin(), values.end());
    }

    if (!binned.empty()) {
        auto [lo_it, hi_it] = std::minmax_element(binned.begin(), binned.end());
        double lo = *lo_it, hi = *hi_it;
        double width = hi - lo;
        std::size_t offset = counts.size() - static_cast<std::size_t>(regular_bins);
        for (double v : binned) {
            int idx = 0;
            if (width > 0.0) {
                idx = static_cast<int>((v - lo) / width * regular_bins);
                idx = std::clamp(idx, 0, regular_bins - 1);
            }
            counts[offset + static_cast<std::size_t>(idx)] += 1.0;
        }
    }
    return count_entropy(counts);
}

DescriptiveStats describe(std::span<const double> values, BinScale entropy_scale, int entropy_bins) {
    DescriptiveStats s;
    s.count = static_cast<int>(values.size());
    if (values.empty()) return s;

    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    s.min = *lo;
    s.max = *hi;
    double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : values) {
        double d = v - s.mean;
        double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    s.std = std::sqrt(m2);
    if (s.std > 0.0) {
        s.skewness = m3 / (m2 * s.std);
        s.kurtosis = m4 / (m2 * m2) - 3.0;
    } else {
        s.skewness = 0.0;
        s.kurtosis = 0.0;
    }
    s.median = median_of(values);
    s.entropy_bits = histogram_entropy(values, entropy_bins, entropy_scale);
    return s;
}

double burstiness(std::span<const double> intervals) {
    if (intervals.size() < 2) throw InsufficientData("burstiness needs at least two intervals");
    double n = static_cast<double>(intervals.size());
    double mean = 0.0;
    for (double v : intervals) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : intervals) var += (v - mean) * (v - mean);
    double sigma = std::sqrt(var / n);
    if (sigma + mean == 0.0) return kMissing;
    return (sigma - mean) / (sigma + mean);
}

}  // namespace botscore
