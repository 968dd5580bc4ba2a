#include "gridmotif/hierarchy.hpp"

#include "gridmotif/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

namespace gridmotif {

using nlohmann::json;

HierarchyNode make_leaf(std::string node_id, MeterSeries series)
{
    HierarchyNode node;
    node.node_id = std::move(node_id);
    node.level = 0;
    node.series = std::move(series);
    return node;
}

HierarchyNode make_parent(std::string node_id, std::vector<HierarchyNode> children)
{
    if (children.empty()) {
        fail(ErrorCode::BadHierarchy, "node '" + node_id + "' has neither children nor data");
    }
    HierarchyNode node;
    node.node_id = std::move(node_id);
    for (const auto& c : children) {
        node.level = std::max(node.level, c.level + 1);
    }
    node.children = std::move(children);
    return node;
}

MeterSeries aggregate_level(const HierarchyNode& node, unsigned threads)
{
    if (node.is_leaf()) {
        if (!node.series) {
            fail(ErrorCode::BadHierarchy, "leaf '" + node.node_id + "' has no series");
        }
        return *node.series;
    }

    std::vector<std::optional<MeterSeries>> child_series(node.children.size());
    if (threads > 1 && node.children.size() > 1) {
        std::vector<std::future<MeterSeries>> jobs;
        for (const auto& child : node.children) {
            jobs.push_back(std::async(std::launch::async, [&child] { return aggregate_level(child, 1); }));
        }
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            child_series[i] = jobs[i].get();
        }
    } else {
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            child_series[i] = aggregate_level(node.children[i], threads);
        }
    }

    const Seconds interval = child_series.front()->sample_interval();
    Timestamp start = child_series.front()->timestamps().front();
    Timestamp stop = child_series.front()->timestamps().back();
    for (std::size_t i = 0; i < child_series.size(); ++i) {
        const auto& s = *child_series[i];
        if (s.sample_interval() != interval) {
            fail(ErrorCode::MixedResolution, "child '" + node.children[i].node_id + "' samples every " +
                                                 format_duration(s.sample_interval()) + ", sibling every " +
                                                 format_duration(interval));
        }
        start = std::max(start, s.timestamps().front());
        stop = std::min(stop, s.timestamps().back());
    }
    if (start > stop) {
        fail(ErrorCode::NoCommonSpan, "children of '" + node.node_id + "' do not overlap in time");
    }
    for (std::size_t i = 0; i < child_series.size(); ++i) {
        if ((start - child_series[i]->timestamps().front()) % interval != 0) {
            fail(ErrorCode::NoCommonSpan, "child '" + node.children[i].node_id + "' is sampled on a shifted grid");
        }
    }
    const std::size_t rows = static_cast<std::size_t>((stop - start) / interval) + 1;

    std::set<std::string> names{kSupplyChannel};
    std::vector<ChannelId> channels;
    std::vector<std::vector<double>> columns;
    std::vector<double> supply(rows, 0.0);
    for (std::size_t i = 0; i < child_series.size(); ++i) {
        const auto& s = *child_series[i];
        const auto offset = static_cast<std::size_t>((start - s.timestamps().front()) / interval);
        const auto mains = s.mains_index();
        std::vector<double> draw(rows);
        std::vector<double> feed(rows);
        bool exports = false;
        for (std::size_t r = 0; r < rows; ++r) {
            const double net = s.at(offset + r, mains);
            supply[r] += net;
            draw[r] = std::max(net, 0.0);
            feed[r] = std::max(-net, 0.0);
            exports = exports || net < 0.0;
        }
        const auto& id = node.children[i].node_id;
        if (!names.insert(id).second) {
            fail(ErrorCode::BadHierarchy, "duplicate channel '" + id + "' under '" + node.node_id + "'");
        }
        channels.push_back({id, ChannelKind::Consumer});
        columns.push_back(std::move(draw));
        if (exports) {
            const auto export_id = id + kExportSuffix;
            if (!names.insert(export_id).second) {
                fail(ErrorCode::BadHierarchy, "duplicate channel '" + export_id + "' under '" + node.node_id + "'");
            }
            channels.push_back({export_id, ChannelKind::Generator});
            columns.push_back(std::move(feed));
        }
    }
    channels.push_back({kSupplyChannel, ChannelKind::Mains});
    columns.push_back(std::move(supply));

    std::vector<Timestamp> timestamps(rows);
    std::vector<double> samples;
    samples.reserve(rows * channels.size());
    for (std::size_t r = 0; r < rows; ++r) {
        timestamps[r] = start + static_cast<Timestamp>(r) * interval;
        for (const auto& col : columns) {
            samples.push_back(col[r]);
        }
    }
    return MeterSeries::create(node.node_id, std::move(channels), std::move(timestamps), interval,
                               std::move(samples));
}

namespace {

HierarchyNode parse_node(const json& doc, const std::filesystem::path& base_dir, std::set<std::string>& ids)
{
    if (!doc.is_object() || !doc.contains("id") || !doc["id"].is_string() || doc["id"].get<std::string>().empty()) {
        fail(ErrorCode::BadHierarchy, "every node needs a non-empty string \"id\"");
    }
    const auto id = doc["id"].get<std::string>();
    if (!ids.insert(id).second) {
        fail(ErrorCode::BadHierarchy, "node id '" + id + "' appears twice");
    }
    const bool has_children = doc.contains("children");
    const bool has_csv = doc.contains("csv");
    if (has_children == has_csv) {
        fail(ErrorCode::BadHierarchy, "node '" + id + "' must have exactly one of \"children\" or \"csv\"");
    }
    if (has_csv) {
        if (!doc["csv"].is_string()) {
            fail(ErrorCode::BadHierarchy, "node '" + id + "': \"csv\" must be a path");
        }
        ChannelSchema schema{"mains", {}};
        if (doc.contains("schema")) {
            const auto& s = doc["schema"];
            if (s.is_string()) {
                schema = ChannelSchema::from_json_file(base_dir / s.get<std::string>());
            } else {
                schema = ChannelSchema::from_json_text(s.dump());
            }
        }
        const auto csv = base_dir / doc["csv"].get<std::string>();
        auto leaf = make_leaf(id, load_csv(csv, schema, id));
        leaf.source = csv;
        return leaf;
    }
    const auto& kids = doc["children"];
    if (!kids.is_array() || kids.empty()) {
        fail(ErrorCode::BadHierarchy, "node '" + id + "': \"children\" must be a non-empty array");
    }
    std::vector<HierarchyNode> children;
    for (const auto& k : kids) {
        children.push_back(parse_node(k, base_dir, ids));
    }
    return make_parent(id, std::move(children));
}

void collect(const HierarchyNode& node, std::vector<const HierarchyNode*>& out)
{
    out.push_back(&node);
    for (const auto& c : node.children) {
        collect(c, out);
    }
}

}  // namespace

HierarchyNode parse_hierarchy(std::string_view json_text, const std::filesystem::path& base_dir)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        fail(ErrorCode::BadHierarchy, std::string("hierarchy is not valid JSON: ") + e.what());
    }
    std::set<std::string> ids;
    return parse_node(doc, base_dir, ids);
}

HierarchyNode load_hierarchy(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::Io, "cannot open " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_hierarchy(buf.str(), path.parent_path());
}

std::vector<const HierarchyNode*> flatten(const HierarchyNode& root)
{
    std::vector<const HierarchyNode*> out;
    collect(root, out);
    return out;
}

}  // namespace gridmotif
