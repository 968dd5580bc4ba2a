#include "gridmotif/window.hpp"

#include "gridmotif/error.hpp"
#include "gridmotif/ingest.hpp"

namespace gridmotif {

WindowPlan plan_windows_samples(std::size_t n_samples, std::size_t length_samples, std::size_t stride_samples,
                                Timestamp start, Seconds sample_interval)
{
    if (length_samples == 0 || stride_samples == 0) {
        fail(ErrorCode::InvalidPlan, "window length and stride must be positive");
    }
    if (stride_samples > length_samples) {
        fail(ErrorCode::InvalidPlan, "stride (" + std::to_string(stride_samples) + " samples) exceeds window length (" +
                                         std::to_string(length_samples) + " samples)");
    }
    if (length_samples > n_samples) {
        fail(ErrorCode::WindowLongerThanSeries, "window of " + std::to_string(length_samples) +
                                                    " samples on a series of " + std::to_string(n_samples));
    }
    WindowPlan plan;
    plan.length_samples = length_samples;
    plan.stride_samples = stride_samples;
    plan.window_count = (n_samples - length_samples) / stride_samples + 1;
    plan.sample_interval = sample_interval;
    plan.window_timestamps.reserve(plan.window_count);
    for (std::size_t k = 0; k < plan.window_count; ++k) {
        plan.window_timestamps.push_back(start + static_cast<Timestamp>(plan.begin(k)) * sample_interval);
    }
    plan.dropped_samples = n_samples - plan.span_samples();
    return plan;
}

WindowPlan plan_windows(const MeterSeries& series, Seconds window_length, Seconds stride)
{
    const Seconds dt = series.sample_interval();
    if (window_length <= 0 || stride <= 0) {
        fail(ErrorCode::InvalidPlan, "window length and stride must be positive");
    }
    if (window_length % dt != 0 || stride % dt != 0) {
        fail(ErrorCode::IncompatibleResolution, "window " + format_duration(window_length) + " / stride " +
                                                    format_duration(stride) + " not a multiple of the " +
                                                    format_duration(dt) + " sample interval");
    }
    return plan_windows_samples(series.rows(), static_cast<std::size_t>(window_length / dt),
                                static_cast<std::size_t>(stride / dt), series.timestamps().front(), dt);
}

}  // namespace gridmotif
