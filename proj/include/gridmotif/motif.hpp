#pragma once

#include "gridmotif/ingest.hpp"
#include "gridmotif/symbolize.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gridmotif {

enum class FlowDirection { CenterToLeaf, LeafToCenter };

struct StarLeaf {
    ChannelId channel;
    FlowDirection direction = FlowDirection::CenterToLeaf;

    bool operator==(const StarLeaf&) const = default;
};

// Static topology of one meter: the mains is the center, every other
// channel is a leaf joined only to the center. Consumers draw from the
// center, generators feed into it.
struct StarMotif {
    std::string node_id;
    std::string center;
    std::vector<StarLeaf> leaves;

    // k = 1 + number of leaves
    std::size_t node_count() const noexcept { return leaves.size() + 1; }
    const StarLeaf* find_leaf(std::string_view name) const noexcept;

    bool operator==(const StarMotif&) const = default;
};

StarMotif build_static_motif(const MeterSeries& series);

// (u, v, t_w, x): power flows from supplier u to consumer v during the
// window starting at t_w, at energy level x.
struct TemporalEdge {
    std::string u;
    std::string v;
    Timestamp t_w = 0;
    char x = 0;

    bool operator==(const TemporalEdge&) const = default;
};

// The star as observed in one window. Only channels that were on appear.
struct MotifFrame {
    Timestamp t_w = 0;
    std::string center;
    std::vector<TemporalEdge> edges;

    // The non-center endpoint of an edge.
    const std::string& leaf_of(const TemporalEdge& e) const noexcept { return e.u == center ? e.v : e.u; }

    bool operator==(const MotifFrame&) const = default;
};

enum class Trend { Up, Down, Flat, Appear, Disappear };

std::string_view to_string(Trend t);
Trend trend_from_string(std::string_view s);
// Up <-> Down, Appear <-> Disappear, Flat fixed.
Trend reverse(Trend t);

using EdgeKey = std::pair<std::string, std::string>;
using TrendMap = std::map<EdgeKey, Trend>;

TrendMap annotate_trends(const MotifFrame& prev, const MotifFrame& next, const Alphabet& alphabet);

struct TrendEntry {
    std::string u;
    std::string v;
    Timestamp from_t = 0;
    Timestamp to_t = 0;
    Trend trend = Trend::Flat;

    bool operator==(const TrendEntry&) const = default;
};

// delta consecutive frames plus the trends between each neighbouring pair,
// ordered by frame pair then edge key.
struct TemporalMotif {
    std::vector<MotifFrame> frames;
    std::vector<TrendEntry> trends;

    std::size_t delta() const noexcept { return frames.size(); }

    bool operator==(const TemporalMotif&) const = default;
};

// Emits an edge for every leaf whose raw window mean is strictly above
// epsilon_on. Inputs are keyed by channel name and must cover every leaf
// with identical window timestamps.
std::vector<MotifFrame> build_frames(const StarMotif& star, const std::map<std::string, SymbolSeries>& symbols,
                                     const std::map<std::string, std::vector<double>>& raw_window_means,
                                     double epsilon_on);
std::vector<MotifFrame> build_frames(const StarMotif& star, const std::vector<ChannelSymbols>& channels,
                                     double epsilon_on);

// Sliding groups of delta consecutive frames, one frame apart.
std::vector<TemporalMotif> assemble_temporal_motifs(const std::vector<MotifFrame>& frames, std::size_t delta,
                                                    const Alphabet& alphabet);

}  // namespace gridmotif
