#pragma once

#include "gridmotif/config.hpp"
#include "gridmotif/hierarchy.hpp"
#include "gridmotif/ingest.hpp"
#include "gridmotif/motif.hpp"
#include "gridmotif/symbolize.hpp"
#include "gridmotif/window.hpp"

#include <vector>

namespace gridmotif {

struct PipelineResult {
    MeterSeries series;  // after the optional unmetered channel
    Residual residual;   // of the input series
    Alphabet alphabet;
    StarMotif star;
    WindowPlan plan;
    std::vector<ChannelSymbols> channels;
    std::vector<MotifFrame> frames;
    std::vector<TemporalMotif> motifs;
};

// conservation check -> star -> windows -> normalize/paa/symbols -> frames
// -> temporal motifs. `threads` only parallelizes per-channel work.
PipelineResult run_pipeline(const MeterSeries& series, const PipelineConfig& config, unsigned threads = 1);

// The same pipeline on the aggregated series of any hierarchy node.
PipelineResult pipeline_at_level(const HierarchyNode& node, const PipelineConfig& config, unsigned threads = 1);

}  // namespace gridmotif
