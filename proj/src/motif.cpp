#include "gridmotif/motif.hpp"

#include "gridmotif/error.hpp"

#include <algorithm>

namespace gridmotif {

const StarLeaf* StarMotif::find_leaf(std::string_view name) const noexcept
{
    for (const auto& leaf : leaves) {
        if (leaf.channel.name == name) {
            return &leaf;
        }
    }
    return nullptr;
}

StarMotif build_static_motif(const MeterSeries& series)
{
    StarMotif star;
    star.node_id = series.node_id();
    star.center = series.channels()[series.mains_index()].name;
    for (const auto& ch : series.channels()) {
        if (ch.kind == ChannelKind::Mains) {
            continue;
        }
        star.leaves.push_back({ch, ch.kind == ChannelKind::Generator ? FlowDirection::LeafToCenter
                                                                     : FlowDirection::CenterToLeaf});
    }
    if (star.leaves.empty()) {
        fail(ErrorCode::NoChannels, "series '" + series.node_id() + "' has no channels besides mains");
    }
    return star;
}

std::string_view to_string(Trend t)
{
    switch (t) {
    case Trend::Up: return "up";
    case Trend::Down: return "down";
    case Trend::Flat: return "flat";
    case Trend::Appear: return "appear";
    case Trend::Disappear: return "disappear";
    }
    return "flat";
}

Trend trend_from_string(std::string_view s)
{
    for (Trend t : {Trend::Up, Trend::Down, Trend::Flat, Trend::Appear, Trend::Disappear}) {
        if (to_string(t) == s) {
            return t;
        }
    }
    fail(ErrorCode::InvalidArgument, "unknown trend '" + std::string(s) + "'");
}

Trend reverse(Trend t)
{
    switch (t) {
    case Trend::Up: return Trend::Down;
    case Trend::Down: return Trend::Up;
    case Trend::Appear: return Trend::Disappear;
    case Trend::Disappear: return Trend::Appear;
    case Trend::Flat: return Trend::Flat;
    }
    return t;
}

TrendMap annotate_trends(const MotifFrame& prev, const MotifFrame& next, const Alphabet& alphabet)
{
    std::map<EdgeKey, char> before;
    for (const auto& e : prev.edges) {
        before.emplace(EdgeKey{e.u, e.v}, e.x);
    }
    TrendMap trends;
    for (const auto& e : next.edges) {
        EdgeKey key{e.u, e.v};
        const auto it = before.find(key);
        if (it == before.end()) {
            trends.emplace(std::move(key), Trend::Appear);
            continue;
        }
        const auto from = alphabet.rank(it->second);
        const auto to = alphabet.rank(e.x);
        trends.emplace(std::move(key), to > from ? Trend::Up : to < from ? Trend::Down : Trend::Flat);
        before.erase(it);
    }
    for (auto& [key, symbol] : before) {
        trends.emplace(key, Trend::Disappear);
    }
    return trends;
}

std::vector<MotifFrame> build_frames(const StarMotif& star, const std::map<std::string, SymbolSeries>& symbols,
                                     const std::map<std::string, std::vector<double>>& raw_window_means,
                                     double epsilon_on)
{
    const std::vector<Timestamp>* reference = nullptr;
    std::vector<std::pair<const SymbolSeries*, const std::vector<double>*>> inputs;
    for (const auto& leaf : star.leaves) {
        const auto s = symbols.find(leaf.channel.name);
        const auto m = raw_window_means.find(leaf.channel.name);
        if (s == symbols.end() || m == raw_window_means.end()) {
            fail(ErrorCode::MisalignedWindows, "no windows for channel '" + leaf.channel.name + "'");
        }
        const auto& ts = s->second.window_timestamps;
        if (s->second.symbols.size() != ts.size() || m->second.size() != ts.size()) {
            fail(ErrorCode::MisalignedWindows, "channel '" + leaf.channel.name + "' has mismatched window counts");
        }
        if (reference == nullptr) {
            reference = &ts;
        } else if (*reference != ts) {
            fail(ErrorCode::MisalignedWindows, "channel '" + leaf.channel.name + "' uses a different window plan");
        }
        inputs.emplace_back(&s->second, &m->second);
    }

    std::vector<MotifFrame> frames(reference->size());
    for (std::size_t k = 0; k < frames.size(); ++k) {
        auto& frame = frames[k];
        frame.t_w = (*reference)[k];
        frame.center = star.center;
        for (std::size_t i = 0; i < star.leaves.size(); ++i) {
            const auto& [sym, means] = inputs[i];
            if (!((*means)[k] > epsilon_on)) {
                continue;
            }
            const auto& leaf = star.leaves[i];
            TemporalEdge e;
            e.t_w = frame.t_w;
            e.x = sym->symbols[k];
            if (leaf.direction == FlowDirection::CenterToLeaf) {
                e.u = star.center;
                e.v = leaf.channel.name;
            } else {
                e.u = leaf.channel.name;
                e.v = star.center;
            }
            frame.edges.push_back(std::move(e));
        }
    }
    return frames;
}

std::vector<MotifFrame> build_frames(const StarMotif& star, const std::vector<ChannelSymbols>& channels,
                                     double epsilon_on)
{
    std::map<std::string, SymbolSeries> symbols;
    std::map<std::string, std::vector<double>> means;
    for (const auto& c : channels) {
        symbols.emplace(c.symbols.channel.name, c.symbols);
        means.emplace(c.symbols.channel.name, c.raw_means);
    }
    return build_frames(star, symbols, means, epsilon_on);
}

std::vector<TemporalMotif> assemble_temporal_motifs(const std::vector<MotifFrame>& frames, std::size_t delta,
                                                    const Alphabet& alphabet)
{
    if (delta < 1) {
        fail(ErrorCode::InvalidDelta, "delta must be at least 1");
    }
    if (delta > frames.size()) {
        fail(ErrorCode::DeltaTooLarge, "delta " + std::to_string(delta) + " exceeds the " +
                                           std::to_string(frames.size()) + " available frames");
    }

    // Trends only depend on the neighbouring pair, so compute each once.
    std::vector<std::vector<TrendEntry>> pair_trends(frames.size() > 0 ? frames.size() - 1 : 0);
    for (std::size_t k = 0; k + 1 < frames.size(); ++k) {
        for (const auto& [key, trend] : annotate_trends(frames[k], frames[k + 1], alphabet)) {
            pair_trends[k].push_back({key.first, key.second, frames[k].t_w, frames[k + 1].t_w, trend});
        }
    }

    std::vector<TemporalMotif> motifs;
    motifs.reserve(frames.size() - delta + 1);
    for (std::size_t start = 0; start + delta <= frames.size(); ++start) {
        TemporalMotif m;
        m.frames.assign(frames.begin() + static_cast<std::ptrdiff_t>(start),
                        frames.begin() + static_cast<std::ptrdiff_t>(start + delta));
        for (std::size_t k = start; k + 1 < start + delta; ++k) {
            m.trends.insert(m.trends.end(), pair_trends[k].begin(), pair_trends[k].end());
        }
        motifs.push_back(std::move(m));
    }
    return motifs;
}

}  // namespace gridmotif
