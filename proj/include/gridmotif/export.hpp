#pragma once

#include "gridmotif/mine.hpp"
#include "gridmotif/motif.hpp"
#include "gridmotif/symbolize.hpp"

#include <string>
#include <vector>

namespace gridmotif {

// Everything needed to write and re-read a motif file.
struct MotifSet {
    std::string node_id;
    std::string center;
    std::vector<char> alphabet;
    std::size_t delta = 0;
    std::vector<TemporalMotif> motifs;

    bool operator==(const MotifSet&) const = default;
};

// {"node_id", "center", "alphabet", "delta", "motifs": [
//    {"delta", "frames": [{"t_w", "edges": [{"u", "v", "x"}]}],
//     "trends": [{"u", "v", "from_t", "to_t", "trend"}]}]}
// Timestamps are ISO-8601 UTC.
std::string motifs_to_json(const MotifSet& set);
MotifSet parse_motifs_json(std::string_view text);

// One digraph for frame `frame` of the motif. Edge labels are "x@t_w",
// suffixed "^" when the level rose since the previous frame and "v" when
// it fell.
std::string frame_to_dot(const TemporalMotif& motif, std::size_t frame, std::string_view node_id);

// "channel,t_w,symbol" rows, channels in series order.
std::string symbols_to_csv(const std::vector<ChannelSymbols>& channels);

// {"delta", "total", "signatures": [{"sig", "count"}]} ordered by top_k rules.
std::string counts_to_json(const SignatureCounts& counts);
std::string counts_to_csv(const SignatureCounts& counts);

}  // namespace gridmotif
