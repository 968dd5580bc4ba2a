#pragma once

#include "gridmotif/ingest.hpp"
#include "gridmotif/window.hpp"

#include <span>
#include <string>
#include <vector>

namespace gridmotif {

// Ordered energy levels over normalized [0, 1]. Bin i is
// [boundaries[i-1], boundaries[i]); the last bin is closed at 1.
class Alphabet {
public:
    static Alphabet create(std::vector<char> labels, std::vector<double> boundaries);
    // Equal-width bins labelled 'a', 'b', ...; uniform(4) is
    // a:[0,.25) b:[.25,.5) c:[.5,.75) d:[.75,1].
    static Alphabet uniform(int n_symbols);

    const std::vector<char>& labels() const noexcept { return labels_; }
    const std::vector<double>& boundaries() const noexcept { return boundaries_; }
    std::size_t size() const noexcept { return labels_.size(); }

    std::size_t bin_of(double value) const;
    char symbol_for(double value) const { return labels_[bin_of(value)]; }
    // Position of a label in the level order; throws BadAlphabet for unknown labels.
    std::size_t rank(char label) const;
    bool contains(char label) const noexcept;

    bool operator==(const Alphabet&) const = default;

private:
    Alphabet() = default;
    std::vector<char> labels_;
    std::vector<double> boundaries_;
};

struct NormalizedSeries {
    ChannelId channel;
    std::vector<double> values;
    double source_min = 0.0;
    double source_max = 0.0;
};

// y = (x - min) / (max - min). A constant input maps to all zeros.
NormalizedSeries min_max_normalize(std::span<const double> values, ChannelId channel = {});
// Same mapping with externally supplied bounds, used for global scaling
// across channels. Values must lie in [lo, hi].
NormalizedSeries normalize_with_bounds(std::span<const double> values, double lo, double hi, ChannelId channel = {});

struct PaaSeries {
    ChannelId channel;
    std::vector<double> window_means;
    std::size_t window_count = 0;
    std::size_t window_length_samples = 0;
    std::size_t stride_samples = 0;
    std::vector<Timestamp> window_timestamps;
};

// Mean of values[begin(k), end(k)) for every window of the plan. Works on
// raw kW as well as normalized values. Throws PlanTooLong if the plan
// needs more samples than given.
std::vector<double> window_means(std::span<const double> values, const WindowPlan& plan);

PaaSeries paa(const NormalizedSeries& series, const WindowPlan& plan);

struct SymbolSeries {
    ChannelId channel;
    std::vector<char> symbols;
    std::vector<Timestamp> window_timestamps;

    bool operator==(const SymbolSeries&) const = default;
};

// Throws ValueOutOfUnitInterval for means outside [0, 1].
SymbolSeries assign_symbols(const PaaSeries& paa, const Alphabet& alphabet);

enum class NormalizationScope { PerChannel, Global };

struct ChannelSymbols {
    NormalizedSeries normalized;
    PaaSeries paa;
    SymbolSeries symbols;
    // Pre-normalization window means in kW; decide whether a channel is on.
    std::vector<double> raw_means;
};

// Runs normalize -> paa -> assign for every non-mains channel of the
// series, in channel order. Global scope uses one min/max over all
// non-mains channels. Channels are spread over `threads` workers; output
// does not depend on the thread count.
std::vector<ChannelSymbols> symbolize_channels(const MeterSeries& series, const WindowPlan& plan,
                                               const Alphabet& alphabet, NormalizationScope scope,
                                               unsigned threads = 1);

}  // namespace gridmotif
