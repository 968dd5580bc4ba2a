#include "gridmotif/error.hpp"
#include "gridmotif/hierarchy.hpp"
#include "gridmotif/pipeline.hpp"

#include "support/generators.hpp"

#include <doctest.h>

#include <cmath>

using namespace gridmotif;

namespace {

HierarchyNode house(std::string id, double mains, std::vector<Timestamp> ts = {0}, Seconds interval = 900)
{
    std::vector<double> samples;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        samples.push_back(mains);
        samples.push_back(mains);
    }
    auto s = MeterSeries::create(id, {{"mains", ChannelKind::Mains}, {"load", ChannelKind::Consumer}}, ts, interval,
                                 samples);
    return make_leaf(std::move(id), std::move(s));
}

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Io;
}

}  // namespace

TEST_CASE("aggregation sums child mains into the parent supply")
{
    const auto community = make_parent("c", {house("h1", 1), house("h2", 2), house("h3", 3)});
    CHECK(community.level == 1);
    CHECK(community.branching() == 3);
    const auto s = aggregate_level(community);
    REQUIRE(s.cols() == 4);
    CHECK(s.column(s.index_of("h1")) == std::vector<double>{1});
    CHECK(s.column(s.index_of("h2")) == std::vector<double>{2});
    CHECK(s.column(s.index_of("h3")) == std::vector<double>{3});
    CHECK(s.column(s.mains_index()) == std::vector<double>{6});
    CHECK(s.channels()[s.mains_index()].name == "supply");
}

TEST_CASE("a single child passes its mains straight through")
{
    const auto s = aggregate_level(make_parent("c", {house("h1", 4.5, {0, 900})}));
    CHECK(s.column(s.mains_index()) == std::vector<double>{4.5, 4.5});
}

TEST_CASE("a house with rooftop generation contributes its net draw")
{
    // consumers 5 kW, generator 2 kW; the meter reads the net 3 kW import.
    const auto s = MeterSeries::create(
        "h", {{"mains", ChannelKind::Mains}, {"heat", ChannelKind::Consumer}, {"pv", ChannelKind::Generator}}, {0},
        900, {3, 5, 2});
    CHECK(check_conservation(s, 0.0).values == std::vector<double>{0});
    const auto parent = aggregate_level(make_parent("c", {make_leaf("h", s)}));
    CHECK(parent.column(parent.index_of("h")) == std::vector<double>{3});
}

TEST_CASE("net export becomes a generator channel")
{
    const auto s = MeterSeries::create(
        "h", {{"mains", ChannelKind::Mains}, {"heat", ChannelKind::Consumer}, {"pv", ChannelKind::Generator}},
        {0, 900}, 900, {1, 2, 1, -2, 1, 3});
    const auto parent = aggregate_level(make_parent("c", {make_leaf("h", s), house("g", 1, {0, 900})}));
    const auto exp = parent.index_of("h/export");
    CHECK(parent.channels()[exp].kind == ChannelKind::Generator);
    CHECK(parent.column(exp) == std::vector<double>{0, 2});
    CHECK(parent.column(parent.index_of("h")) == std::vector<double>{1, 0});
    CHECK(parent.column(parent.mains_index()) == std::vector<double>{2, -1});
    CHECK(check_conservation(parent, 0.0).values == std::vector<double>{0, 0});
}

TEST_CASE("children are aligned on their common span")
{
    const auto parent =
        aggregate_level(make_parent("c", {house("a", 1, {0, 900, 1800, 2700}), house("b", 2, {900, 1800, 2700, 3600})}));
    CHECK(parent.timestamps() == std::vector<Timestamp>{900, 1800, 2700});

    CHECK(code_of([] { aggregate_level(make_parent("c", {house("a", 1, {0, 900}), house("b", 1, {1800, 2700})})); }) ==
          ErrorCode::NoCommonSpan);
    CHECK(code_of([] {
              aggregate_level(make_parent("c", {house("a", 1, {0, 900}), house("b", 1, {0, 300}, 300)}));
          }) == ErrorCode::MixedResolution);
    CHECK(code_of([] { aggregate_level(make_parent("c", {house("a", 1, {0, 900}), house("b", 1, {450, 1350})})); }) ==
          ErrorCode::NoCommonSpan);
    CHECK(code_of([] { make_parent("c", {}); }) == ErrorCode::BadHierarchy);
}

TEST_CASE("three-level trees reuse the same aggregation")
{
    testing::Rng rng(23);
    auto north = testing::random_community(rng, 3, 12, "north");
    auto south = testing::random_community(rng, 2, 12, "south");
    const auto city = make_parent("city", {north, south});
    CHECK(city.level == 2);
    CHECK(city.levels() == 3);
    const auto s = aggregate_level(city);
    const auto n = aggregate_level(north);
    const auto so = aggregate_level(south);
    for (std::size_t r = 0; r < s.rows(); ++r) {
        CHECK(std::abs(s.at(r, s.mains_index()) - (n.at(r, n.mains_index()) + so.at(r, so.mains_index()))) <= 1e-9);
    }
    CHECK(aggregate_level(city, 4) == s);
}

TEST_CASE("pipeline at a community level")
{
    PipelineConfig cfg;
    cfg.window_length = 3600;
    cfg.delta = 3;
    testing::Rng rng(1);
    const auto a = testing::random_series(rng, 2, 0, 12, "a");
    const auto community = make_parent("c", {make_leaf("a", a), make_leaf("b", a)});
    const auto result = pipeline_at_level(community, cfg);
    REQUIRE(result.motifs.size() == 1);
    for (const auto& f : result.motifs[0].frames) {
        CHECK(f.edges.size() <= 2);
        if (f.edges.size() == 2) {
            CHECK(f.edges[0].x == f.edges[1].x);
        }
    }
    // identical houses get identical symbols window by window
    CHECK(result.channels[0].symbols.symbols == result.channels[1].symbols.symbols);
}

TEST_CASE("a flat single-child level symbolizes to the lowest level")
{
    PipelineConfig cfg;
    const auto result = pipeline_at_level(
        make_parent("c", {house("only", 2.0, {0, 900, 1800, 2700, 3600, 4500, 5400, 6300, 7200, 8100, 9000, 9900})}),
        cfg);
    for (const auto& c : result.channels) {
        for (char x : c.symbols.symbols) {
            CHECK(x == 'a');
        }
    }
}

TEST_CASE("hierarchy JSON")
{
    const auto root = load_hierarchy(std::string(GRIDMOTIF_DATA_DIR) + "/community/hierarchy.json");
    CHECK(root.node_id == "community");
    CHECK(root.level == 1);
    REQUIRE(root.children.size() == 2);
    CHECK(root.children[1].series->channels()[3].kind == ChannelKind::Generator);
    CHECK(flatten(root).size() == 3);

    CHECK(code_of([] { parse_hierarchy(R"({"id": "x"})", "."); }) == ErrorCode::BadHierarchy);
    CHECK(code_of([] { parse_hierarchy(R"({"id": "x", "children": []})", "."); }) == ErrorCode::BadHierarchy);
    CHECK(code_of([] {
              parse_hierarchy(R"({"id": "x", "children": [{"id": "x", "children": [{"id": "y", "csv": "a.csv"}]}]})",
                              ".");
          }) == ErrorCode::BadHierarchy);
    CHECK(code_of([] { parse_hierarchy(R"({"id": "x", "csv": "missing.csv"})", "/nonexistent"); }) == ErrorCode::Io);
}
