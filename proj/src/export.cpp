#include "gridmotif/export.hpp"

#include "gridmotif/error.hpp"

#include <json.hpp>

namespace gridmotif {

using ojson = nlohmann::ordered_json;

namespace {

ojson motif_to_json(const TemporalMotif& m)
{
    ojson frames = ojson::array();
    for (const auto& f : m.frames) {
        ojson edges = ojson::array();
        for (const auto& e : f.edges) {
            edges.push_back({{"u", e.u}, {"v", e.v}, {"x", std::string(1, e.x)}});
        }
        frames.push_back({{"t_w", format_iso8601(f.t_w)}, {"edges", std::move(edges)}});
    }
    ojson trends = ojson::array();
    for (const auto& t : m.trends) {
        trends.push_back({{"u", t.u},
                          {"v", t.v},
                          {"from_t", format_iso8601(t.from_t)},
                          {"to_t", format_iso8601(t.to_t)},
                          {"trend", std::string(to_string(t.trend))}});
    }
    return {{"delta", m.delta()}, {"frames", std::move(frames)}, {"trends", std::move(trends)}};
}

const ojson& field(const ojson& obj, const char* key)
{
    if (!obj.is_object() || !obj.contains(key)) {
        fail(ErrorCode::InvalidArgument, std::string("motif JSON is missing \"") + key + "\"");
    }
    return obj[key];
}

std::string string_field(const ojson& obj, const char* key)
{
    const auto& v = field(obj, key);
    if (!v.is_string()) {
        fail(ErrorCode::InvalidArgument, std::string("motif JSON field \"") + key + "\" must be a string");
    }
    return v.get<std::string>();
}

char symbol_field(const ojson& obj, const char* key)
{
    const auto s = string_field(obj, key);
    if (s.size() != 1) {
        fail(ErrorCode::InvalidArgument, "symbols must be single characters");
    }
    return s[0];
}

std::string dot_quote(std::string_view s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string motifs_to_json(const MotifSet& set)
{
    ojson alphabet = ojson::array();
    for (char c : set.alphabet) {
        alphabet.push_back(std::string(1, c));
    }
    ojson motifs = ojson::array();
    for (const auto& m : set.motifs) {
        motifs.push_back(motif_to_json(m));
    }
    ojson doc = {{"node_id", set.node_id},
                 {"center", set.center},
                 {"alphabet", std::move(alphabet)},
                 {"delta", set.delta},
                 {"motifs", std::move(motifs)}};
    return doc.dump(2) + "\n";
}

MotifSet parse_motifs_json(std::string_view text)
{
    ojson doc;
    try {
        doc = ojson::parse(text);
    } catch (const ojson::exception& e) {
        fail(ErrorCode::InvalidArgument, std::string("motif file is not valid JSON: ") + e.what());
    }
    MotifSet set;
    set.node_id = string_field(doc, "node_id");
    set.center = string_field(doc, "center");
    for (const auto& a : field(doc, "alphabet")) {
        if (!a.is_string() || a.get<std::string>().size() != 1) {
            fail(ErrorCode::InvalidArgument, "alphabet entries must be single characters");
        }
        set.alphabet.push_back(a.get<std::string>()[0]);
    }
    const auto& delta = field(doc, "delta");
    if (!delta.is_number_unsigned()) {
        fail(ErrorCode::InvalidArgument, "\"delta\" must be a non-negative integer");
    }
    set.delta = delta.get<std::size_t>();
    const auto& motifs = field(doc, "motifs");
    if (!motifs.is_array()) {
        fail(ErrorCode::InvalidArgument, "\"motifs\" must be an array");
    }
    for (const auto& jm : motifs) {
        TemporalMotif m;
        for (const auto& jf : field(jm, "frames")) {
            MotifFrame f;
            f.center = set.center;
            f.t_w = parse_timestamp(string_field(jf, "t_w"));
            for (const auto& je : field(jf, "edges")) {
                f.edges.push_back({string_field(je, "u"), string_field(je, "v"), f.t_w, symbol_field(je, "x")});
            }
            m.frames.push_back(std::move(f));
        }
        for (const auto& jt : field(jm, "trends")) {
            m.trends.push_back({string_field(jt, "u"), string_field(jt, "v"),
                                parse_timestamp(string_field(jt, "from_t")),
                                parse_timestamp(string_field(jt, "to_t")), trend_from_string(string_field(jt, "trend"))});
        }
        if (m.delta() != set.delta) {
            fail(ErrorCode::MixedDelta, "motif with " + std::to_string(m.delta()) + " frames in a file of delta " +
                                            std::to_string(set.delta));
        }
        set.motifs.push_back(std::move(m));
    }
    return set;
}

std::string frame_to_dot(const TemporalMotif& motif, std::size_t frame, std::string_view node_id)
{
    if (frame >= motif.frames.size()) {
        fail(ErrorCode::InvalidArgument, "frame index out of range");
    }
    const auto& f = motif.frames[frame];
    const auto when = format_iso8601(f.t_w);
    std::string out = "digraph " + dot_quote(std::string(node_id) + "@" + when) + " {\n";
    out += "  " + dot_quote(f.center) + " [shape=doublecircle];\n";
    for (const auto& e : f.edges) {
        std::string label = std::string(1, e.x) + "@" + when;
        if (frame > 0) {
            for (const auto& t : motif.trends) {
                if (t.to_t == f.t_w && t.u == e.u && t.v == e.v) {
                    if (t.trend == Trend::Up) {
                        label += "^";
                    } else if (t.trend == Trend::Down) {
                        label += "v";
                    }
                    break;
                }
            }
        }
        out += "  " + dot_quote(e.u) + " -> " + dot_quote(e.v) + " [label=" + dot_quote(label) + "];\n";
    }
    out += "}\n";
    return out;
}

std::string symbols_to_csv(const std::vector<ChannelSymbols>& channels)
{
    std::string out = "channel,t_w,symbol\n";
    for (const auto& c : channels) {
        const auto& s = c.symbols;
        for (std::size_t k = 0; k < s.symbols.size(); ++k) {
            out += s.channel.name;
            out += ',';
            out += format_iso8601(s.window_timestamps[k]);
            out += ',';
            out += s.symbols[k];
            out += '\n';
        }
    }
    return out;
}

std::string counts_to_json(const SignatureCounts& counts)
{
    ojson sigs = ojson::array();
    for (const auto& [sig, n] : top_k(counts, std::max<std::size_t>(1, counts.counts.size()))) {
        sigs.push_back({{"sig", sig}, {"count", n}});
    }
    ojson doc = {{"delta", counts.delta}, {"total", counts.total_motifs}, {"signatures", std::move(sigs)}};
    return doc.dump(2) + "\n";
}

std::string counts_to_csv(const SignatureCounts& counts)
{
    std::string out = "signature,count\n";
    for (const auto& [sig, n] : top_k(counts, std::max<std::size_t>(1, counts.counts.size()))) {
        // Signatures contain commas; quote per RFC 4180.
        out += '"';
        for (char c : sig) {
            if (c == '"') {
                out += '"';
            }
            out += c;
        }
        out += "\",";
        out += std::to_string(n);
        out += '\n';
    }
    return out;
}

}  // namespace gridmotif
