#pragma once

#include "gridmotif/ingest.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace gridmotif {

// One node of the distribution tree. Leaves carry a metered series (a
// house and its appliances); inner nodes (community, city, ...) are
// described by their children. level 0 is the house layer and each parent
// sits one level above its highest child.
struct HierarchyNode {
    std::string node_id;
    int level = 0;
    std::vector<HierarchyNode> children;
    std::optional<MeterSeries> series;
    // CSV the leaf series was loaded from, when it came from a file.
    std::filesystem::path source;

    bool is_leaf() const noexcept { return children.empty(); }
    // b, the fan-out of this node
    std::size_t branching() const noexcept { return children.size(); }
    // L, the number of levels in the subtree rooted here
    int levels() const noexcept { return level + 1; }
};

// Name of the mains channel in aggregated series.
inline constexpr const char* kSupplyChannel = "supply";
// Suffix of the generator channel carrying a child's net export.
inline constexpr const char* kExportSuffix = "/export";

// Leaf nodes return their own series. Inner nodes get one Consumer channel
// per child holding max(net, 0), plus a Generator channel "<child>/export"
// holding max(-net, 0) for children that ever export. A child's net is its
// signed mains reading. The parent mains "supply" is the sum of child nets
// over the common timestamp grid.
MeterSeries aggregate_level(const HierarchyNode& node, unsigned threads = 1);

// Builds a node from children, assigning levels. Throws BadHierarchy for
// nodes that are neither leaves with data nor parents.
HierarchyNode make_leaf(std::string node_id, MeterSeries series);
HierarchyNode make_parent(std::string node_id, std::vector<HierarchyNode> children);

// Nested {"id": ..., "children": [...]} with leaves
// {"id": ..., "csv": "<path>", "schema": {...} | "<path>"}. Relative paths
// resolve against the directory of the hierarchy file.
HierarchyNode load_hierarchy(const std::filesystem::path& path);
HierarchyNode parse_hierarchy(std::string_view json_text, const std::filesystem::path& base_dir);

// Pre-order list of every node in the tree.
std::vector<const HierarchyNode*> flatten(const HierarchyNode& root);

}  // namespace gridmotif
