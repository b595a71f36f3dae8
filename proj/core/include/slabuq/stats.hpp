#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace slabuq {

/// Welford online mean/variance accumulator.
class RunningStats {
public:
    void add(double x) {
        ++count_;
        double delta = x - mean_;
        mean_ += delta / static_cast<double>(count_);
        m2_ += delta * (x - mean_);
        if (x < min_ || count_ == 1) min_ = x;
        if (x > max_ || count_ == 1) max_ = x;
    }

    std::size_t count() const noexcept { return count_; }
    double mean() const noexcept { return count_ ? mean_ : 0.0; }

    /// Population variance M2/n; 0 when empty.
    double variance_population() const noexcept {
        return count_ ? m2_ / static_cast<double>(count_) : 0.0;
    }

    /// Sample variance M2/(n-1); 0 when fewer than 2 values.
    double variance_sample() const noexcept {
        return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
    }

    double min() const noexcept { return count_ ? min_ : 0.0; }
    double max() const noexcept { return count_ ? max_ : 0.0; }

private:
    std::size_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
    double min_ = 0.0;
    double max_ = 0.0;
};

/// Equal-width histogram over [lo, hi]; the top edge is inclusive.
struct Histogram {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<std::size_t> counts;

    double bin_width() const {
        return counts.empty() ? 0.0 : (hi - lo) / static_cast<double>(counts.size());
    }

    /// Builds over the data's [min, max] range. A point mass goes into a
    /// single-bin histogram of zero width.
    static Histogram build(std::span<const double> values, int bins);
};

/// Linear-interpolation quantile of an ascending-sorted sample, q in [0, 1].
double quantile_sorted(std::span<const double> sorted, double q);

} // namespace slabuq
