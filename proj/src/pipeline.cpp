#include "gridmotif/pipeline.hpp"

#include "gridmotif/error.hpp"

#include <sstream>

namespace gridmotif {

PipelineResult run_pipeline(const MeterSeries& input, const PipelineConfig& config, unsigned threads)
{
    config.validate();
    auto residual = check_conservation(input, config.tolerance);
    MeterSeries series = input;
    if (config.unmetered) {
        series = synthesize_residual_channel(input, config.tolerance);
    } else if (!residual.within_tolerance()) {
        std::ostringstream msg;
        msg << "series '" << input.node_id() << "' violates mains = consumers - generators by "
            << residual.max_relative_violation << " (tolerance " << config.tolerance
            << "); enable \"unmetered\" to model the residual";
        fail(ErrorCode::ConservationViolation, msg.str());
    }

    auto alphabet = config.alphabet.build();
    auto star = build_static_motif(series);
    auto plan = plan_windows(series, config.window_length, config.effective_stride());
    auto channels = symbolize_channels(series, plan, alphabet, config.normalization, threads);
    auto frames = build_frames(star, channels, config.epsilon_on);
    auto motifs = assemble_temporal_motifs(frames, config.delta, alphabet);
    return PipelineResult{std::move(series),   std::move(residual), std::move(alphabet), std::move(star),
                          std::move(plan),     std::move(channels), std::move(frames),   std::move(motifs)};
}

PipelineResult pipeline_at_level(const HierarchyNode& node, const PipelineConfig& config, unsigned threads)
{
    return run_pipeline(aggregate_level(node, threads), config, threads);
}

}  // namespace gridmotif
