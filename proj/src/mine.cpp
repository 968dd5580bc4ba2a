#include "gridmotif/mine.hpp"

#include "gridmotif/error.hpp"

#include <algorithm>
#include <future>
#include <set>
#include <tuple>

namespace gridmotif {

namespace {

bool needs_escape(char c)
{
    return c == '\\' || c == ':' || c == ',' || c == '[' || c == ']';
}

void append_escaped(std::string& out, std::string_view text)
{
    for (char c : text) {
        if (needs_escape(c)) {
            out += '\\';
        }
        out += c;
    }
}

}  // namespace

MotifSignature signature_of(const TemporalMotif& motif)
{
    MotifSignature sig;
    for (const auto& frame : motif.frames) {
        std::vector<SignatureEdge> edges;
        edges.reserve(frame.edges.size());
        for (const auto& e : frame.edges) {
            const bool outward = e.u == frame.center;
            edges.push_back({outward ? e.v : e.u, e.x,
                             outward ? FlowDirection::CenterToLeaf : FlowDirection::LeafToCenter});
        }
        std::sort(edges.begin(), edges.end());
        sig += '[';
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (i > 0) {
                sig += ',';
            }
            append_escaped(sig, edges[i].leaf);
            sig += ':';
            append_escaped(sig, std::string_view(&edges[i].symbol, 1));
            sig += ':';
            sig += edges[i].direction == FlowDirection::CenterToLeaf ? '>' : '<';
        }
        sig += ']';
    }
    return sig;
}

std::vector<std::vector<SignatureEdge>> decode_signature(std::string_view signature)
{
    auto bad = [&] { fail(ErrorCode::InvalidArgument, "malformed signature '" + std::string(signature) + "'"); };
    std::vector<std::vector<SignatureEdge>> frames;
    std::size_t pos = 0;
    // Reads up to an unescaped terminator.
    auto read_token = [&](std::string& out) {
        out.clear();
        while (pos < signature.size()) {
            const char c = signature[pos];
            if (c == '\\') {
                if (pos + 1 >= signature.size()) {
                    bad();
                }
                out += signature[pos + 1];
                pos += 2;
            } else if (needs_escape(c)) {
                return;
            } else {
                out += c;
                ++pos;
            }
        }
    };
    std::string leaf;
    std::string symbol;
    while (pos < signature.size()) {
        if (signature[pos] != '[') {
            bad();
        }
        ++pos;
        std::vector<SignatureEdge> edges;
        if (pos < signature.size() && signature[pos] == ']') {
            ++pos;
            frames.push_back(std::move(edges));
            continue;
        }
        while (true) {
            read_token(leaf);
            if (pos >= signature.size() || signature[pos] != ':') {
                bad();
            }
            ++pos;
            read_token(symbol);
            if (symbol.size() != 1 || pos >= signature.size() || signature[pos] != ':') {
                bad();
            }
            ++pos;
            if (pos >= signature.size() || (signature[pos] != '>' && signature[pos] != '<')) {
                bad();
            }
            const auto dir = signature[pos] == '>' ? FlowDirection::CenterToLeaf : FlowDirection::LeafToCenter;
            ++pos;
            edges.push_back({leaf, symbol[0], dir});
            if (pos < signature.size() && signature[pos] == ',') {
                ++pos;
                continue;
            }
            if (pos < signature.size() && signature[pos] == ']') {
                ++pos;
                break;
            }
            bad();
        }
        frames.push_back(std::move(edges));
    }
    return frames;
}

SignatureCounts count_signatures(const std::vector<TemporalMotif>& motifs, unsigned threads)
{
    SignatureCounts out;
    if (motifs.empty()) {
        return out;
    }
    out.delta = motifs.front().delta();
    for (const auto& m : motifs) {
        if (m.delta() != out.delta) {
            fail(ErrorCode::MixedDelta, "motifs of " + std::to_string(out.delta) + " and " +
                                            std::to_string(m.delta()) + " frames cannot be counted together");
        }
    }
    out.total_motifs = motifs.size();

    const std::size_t shards = std::min<std::size_t>(std::max(1u, threads), motifs.size());
    if (shards <= 1) {
        for (const auto& m : motifs) {
            ++out.counts[signature_of(m)];
        }
        return out;
    }
    std::vector<std::future<std::map<MotifSignature, std::size_t>>> jobs;
    const std::size_t chunk = (motifs.size() + shards - 1) / shards;
    for (std::size_t begin = 0; begin < motifs.size(); begin += chunk) {
        const std::size_t end = std::min(motifs.size(), begin + chunk);
        jobs.push_back(std::async(std::launch::async, [&motifs, begin, end] {
            std::map<MotifSignature, std::size_t> local;
            for (std::size_t i = begin; i < end; ++i) {
                ++local[signature_of(motifs[i])];
            }
            return local;
        }));
    }
    for (auto& j : jobs) {
        for (auto& [sig, n] : j.get()) {
            out.counts[sig] += n;
        }
    }
    return out;
}

std::vector<std::pair<MotifSignature, std::size_t>> top_k(const SignatureCounts& counts, std::size_t k)
{
    if (k < 1) {
        fail(ErrorCode::InvalidArgument, "k must be at least 1");
    }
    std::vector<std::pair<MotifSignature, std::size_t>> ranked(counts.counts.begin(), counts.counts.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    if (ranked.size() > k) {
        ranked.resize(k);
    }
    return ranked;
}

bool same_edge_content(const TemporalMotif& a, const TemporalMotif& b)
{
    if (a.frames.size() != b.frames.size()) {
        return false;
    }
    for (std::size_t f = 0; f < a.frames.size(); ++f) {
        const auto& ea = a.frames[f].edges;
        const auto& eb = b.frames[f].edges;
        if (ea.size() != eb.size()) {
            return false;
        }
        for (const auto& x : ea) {
            const bool found = std::any_of(eb.begin(), eb.end(), [&](const TemporalEdge& y) {
                return x.u == y.u && x.v == y.v && x.x == y.x;
            });
            if (!found) {
                return false;
            }
        }
    }
    return true;
}

std::vector<OracleGroup> naive_count(const std::vector<TemporalMotif>& motifs)
{
    std::vector<OracleGroup> groups;
    for (std::size_t i = 0; i < motifs.size(); ++i) {
        bool matched = false;
        for (auto& g : groups) {
            if (same_edge_content(motifs[g.representative], motifs[i])) {
                ++g.count;
                matched = true;
                break;
            }
        }
        if (!matched) {
            groups.push_back({i, 1});
        }
    }
    return groups;
}

bool verify_counts(const std::vector<TemporalMotif>& motifs, const SignatureCounts& counts)
{
    const auto groups = naive_count(motifs);
    if (groups.size() != counts.counts.size()) {
        return false;
    }
    std::size_t total = 0;
    for (const auto& g : groups) {
        const auto it = counts.counts.find(signature_of(motifs[g.representative]));
        if (it == counts.counts.end() || it->second != g.count) {
            return false;
        }
        total += g.count;
    }
    return total == counts.total_motifs;
}

}  // namespace gridmotif
