#include "gridmotif/symbolize.hpp"

#include "gridmotif/error.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <set>

namespace gridmotif {

Alphabet Alphabet::create(std::vector<char> labels, std::vector<double> boundaries)
{
    if (labels.empty()) {
        fail(ErrorCode::BadAlphabet, "alphabet needs at least one symbol");
    }
    std::set<char> seen;
    for (char c : labels) {
        if (c <= ' ' || c > '~' || c == ',' || c == '"') {
            fail(ErrorCode::BadAlphabet, "symbol labels must be printable, non-space, and not ',' or '\"'");
        }
        if (!seen.insert(c).second) {
            fail(ErrorCode::BadAlphabet, std::string("duplicate symbol '") + c + "'");
        }
    }
    if (boundaries.size() + 1 != labels.size()) {
        fail(ErrorCode::BadAlphabet, "need " + std::to_string(labels.size() - 1) + " boundaries for " +
                                         std::to_string(labels.size()) + " symbols, got " +
                                         std::to_string(boundaries.size()));
    }
    double prev = 0.0;
    for (double b : boundaries) {
        if (!(b > prev) || !(b < 1.0)) {
            fail(ErrorCode::BadAlphabet, "boundaries must be strictly ascending inside (0, 1)");
        }
        prev = b;
    }
    Alphabet a;
    a.labels_ = std::move(labels);
    a.boundaries_ = std::move(boundaries);
    return a;
}

Alphabet Alphabet::uniform(int n_symbols)
{
    if (n_symbols < 2 || n_symbols > 26) {
        fail(ErrorCode::BadSymbolCount, "symbol count must be in [2, 26], got " + std::to_string(n_symbols));
    }
    std::vector<char> labels;
    std::vector<double> boundaries;
    for (int i = 0; i < n_symbols; ++i) {
        labels.push_back(static_cast<char>('a' + i));
        if (i > 0) {
            boundaries.push_back(static_cast<double>(i) / n_symbols);
        }
    }
    return create(std::move(labels), std::move(boundaries));
}

std::size_t Alphabet::bin_of(double value) const
{
    if (!(value >= 0.0 && value <= 1.0)) {
        fail(ErrorCode::ValueOutOfUnitInterval, "value " + std::to_string(value) + " is outside [0, 1]");
    }
    const auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), value);
    return static_cast<std::size_t>(it - boundaries_.begin());
}

std::size_t Alphabet::rank(char label) const
{
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        fail(ErrorCode::BadAlphabet, std::string("symbol '") + label + "' is not in the alphabet");
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

bool Alphabet::contains(char label) const noexcept
{
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

NormalizedSeries normalize_with_bounds(std::span<const double> values, double lo, double hi, ChannelId channel)
{
    NormalizedSeries out;
    out.channel = std::move(channel);
    out.source_min = lo;
    out.source_max = hi;
    out.values.resize(values.size(), 0.0);
    if (hi > lo) {
        const double range = hi - lo;
        for (std::size_t i = 0; i < values.size(); ++i) {
            out.values[i] = std::clamp((values[i] - lo) / range, 0.0, 1.0);
        }
    }
    return out;
}

NormalizedSeries min_max_normalize(std::span<const double> values, ChannelId channel)
{
    if (values.empty()) {
        fail(ErrorCode::InvalidArgument, "cannot normalize an empty series");
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return normalize_with_bounds(values, *lo, *hi, std::move(channel));
}

std::vector<double> window_means(std::span<const double> values, const WindowPlan& plan)
{
    if (plan.span_samples() > values.size()) {
        fail(ErrorCode::PlanTooLong, "plan needs " + std::to_string(plan.span_samples()) + " samples, series has " +
                                         std::to_string(values.size()));
    }
    std::vector<double> means(plan.window_count);
    for (std::size_t k = 0; k < plan.window_count; ++k) {
        double sum = 0.0;
        for (std::size_t i = plan.begin(k); i < plan.end(k); ++i) {
            sum += values[i];
        }
        means[k] = sum / static_cast<double>(plan.length_samples);
    }
    return means;
}

PaaSeries paa(const NormalizedSeries& series, const WindowPlan& plan)
{
    PaaSeries out;
    out.channel = series.channel;
    out.window_means = window_means(series.values, plan);
    // Rounding in the division can push a mean of values in [0, 1] a hair outside.
    for (double& m : out.window_means) {
        m = std::clamp(m, 0.0, 1.0);
    }
    out.window_count = plan.window_count;
    out.window_length_samples = plan.length_samples;
    out.stride_samples = plan.stride_samples;
    out.window_timestamps = plan.window_timestamps;
    return out;
}

SymbolSeries assign_symbols(const PaaSeries& paa, const Alphabet& alphabet)
{
    SymbolSeries out;
    out.channel = paa.channel;
    out.window_timestamps = paa.window_timestamps;
    out.symbols.reserve(paa.window_means.size());
    for (double m : paa.window_means) {
        out.symbols.push_back(alphabet.symbol_for(m));
    }
    if (out.window_timestamps.size() != out.symbols.size()) {
        out.window_timestamps.resize(out.symbols.size(), 0);
    }
    return out;
}

std::vector<ChannelSymbols> symbolize_channels(const MeterSeries& series, const WindowPlan& plan,
                                               const Alphabet& alphabet, NormalizationScope scope, unsigned threads)
{
    std::vector<std::size_t> columns;
    for (std::size_t c = 0; c < series.cols(); ++c) {
        if (series.channels()[c].kind != ChannelKind::Mains) {
            columns.push_back(c);
        }
    }

    double global_lo = std::numeric_limits<double>::infinity();
    double global_hi = -std::numeric_limits<double>::infinity();
    if (scope == NormalizationScope::Global) {
        for (std::size_t r = 0; r < series.rows(); ++r) {
            for (std::size_t c : columns) {
                global_lo = std::min(global_lo, series.at(r, c));
                global_hi = std::max(global_hi, series.at(r, c));
            }
        }
    }

    std::vector<ChannelSymbols> out(columns.size());
    auto work = [&](std::size_t slot) {
        const std::size_t c = columns[slot];
        const auto raw = series.column(c);
        auto& cs = out[slot];
        cs.normalized = scope == NormalizationScope::Global
                            ? normalize_with_bounds(raw, global_lo, global_hi, series.channels()[c])
                            : min_max_normalize(raw, series.channels()[c]);
        cs.paa = paa(cs.normalized, plan);
        cs.symbols = assign_symbols(cs.paa, alphabet);
        cs.raw_means = window_means(raw, plan);
    };

    const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), columns.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            work(i);
        }
        return out;
    }
    std::vector<std::future<void>> jobs;
    jobs.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < columns.size(); i += workers) {
                work(i);
            }
        }));
    }
    for (auto& j : jobs) {
        j.get();
    }
    return out;
}

}  // namespace gridmotif
