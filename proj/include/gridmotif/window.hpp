#pragma once

#include "gridmotif/time.hpp"

#include <cstddef>
#include <vector>

namespace gridmotif {

class MeterSeries;

// How a uniformly sampled series is cut into windows. stride == length
// gives non-overlapping windows; stride < length makes consecutive windows
// share (length - stride) samples. Samples past the last full window are
// dropped and counted in dropped_samples.
struct WindowPlan {
    std::size_t length_samples = 0;
    std::size_t stride_samples = 0;
    std::size_t window_count = 0;
    std::vector<Timestamp> window_timestamps;
    Seconds sample_interval = 0;
    std::size_t dropped_samples = 0;

    std::size_t begin(std::size_t window) const noexcept { return window * stride_samples; }
    std::size_t end(std::size_t window) const noexcept { return window * stride_samples + length_samples; }
    // Samples the plan touches: (w - 1) * stride + length.
    std::size_t span_samples() const noexcept
    {
        return window_count == 0 ? 0 : (window_count - 1) * stride_samples + length_samples;
    }

    bool operator==(const WindowPlan&) const = default;
};

// Largest plan that fits n samples: w = floor((n - length) / stride) + 1.
WindowPlan plan_windows_samples(std::size_t n_samples, std::size_t length_samples, std::size_t stride_samples,
                                Timestamp start = 0, Seconds sample_interval = 1);

// Durations in seconds; both must be positive multiples of the series'
// sample interval, stride <= window_length <= span of the series.
WindowPlan plan_windows(const MeterSeries& series, Seconds window_length, Seconds stride);

}  // namespace gridmotif
