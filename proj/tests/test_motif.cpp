#include "gridmotif/error.hpp"
#include "gridmotif/motif.hpp"

#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

using namespace gridmotif;

namespace {

MeterSeries star_series(std::vector<ChannelId> leaves)
{
    std::vector<ChannelId> channels{{"meter", ChannelKind::Mains}};
    channels.insert(channels.end(), leaves.begin(), leaves.end());
    std::vector<double> samples(channels.size(), 0.0);
    return MeterSeries::create("house", channels, {0}, 900, samples);
}

SymbolSeries symbols(std::string name, std::vector<char> s, std::vector<Timestamp> ts)
{
    return SymbolSeries{{std::move(name), ChannelKind::Consumer}, std::move(s), std::move(ts)};
}

MotifFrame frame(Timestamp t, std::vector<std::pair<std::string, char>> consumer_edges)
{
    MotifFrame f;
    f.t_w = t;
    f.center = "meter";
    for (auto& [leaf, x] : consumer_edges) {
        f.edges.push_back({"meter", leaf, t, x});
    }
    return f;
}

}  // namespace

TEST_CASE("static star motifs")
{
    const auto four = build_static_motif(star_series({{"a", ChannelKind::Consumer},
                                                      {"b", ChannelKind::Consumer},
                                                      {"c", ChannelKind::Consumer},
                                                      {"d", ChannelKind::Consumer}}));
    CHECK(four.node_count() == 5);
    CHECK(four.center == "meter");
    for (const auto& leaf : four.leaves) {
        CHECK(leaf.direction == FlowDirection::CenterToLeaf);
    }

    const auto mixed = build_static_motif(star_series({{"fridge", ChannelKind::Consumer}, {"pv", ChannelKind::Generator}}));
    REQUIRE(mixed.leaves.size() == 2);
    CHECK(mixed.find_leaf("fridge")->direction == FlowDirection::CenterToLeaf);
    CHECK(mixed.find_leaf("pv")->direction == FlowDirection::LeafToCenter);
    CHECK(mixed.find_leaf("nope") == nullptr);

    try {
        build_static_motif(star_series({}));
        FAIL("expected NoChannels");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoChannels);
    }
}

TEST_CASE("frames omit channels that are off")
{
    const auto star = build_static_motif(star_series({{"fridge", ChannelKind::Consumer}}));
    const std::vector<Timestamp> ts{0, 3600};
    const auto frames = build_frames(star, {{"fridge", symbols("fridge", {'a', 'c'}, ts)}},
                                     {{"fridge", {0.0, 1.2}}}, 0.0);
    REQUIRE(frames.size() == 2);
    CHECK(frames[0].edges.empty());
    REQUIRE(frames[1].edges.size() == 1);
    CHECK(frames[1].edges[0] == TemporalEdge{"meter", "fridge", 3600, 'c'});
}

TEST_CASE("frames of an always-on star carry k-1 edges; generators point inward")
{
    const auto star = build_static_motif(star_series({{"fridge", ChannelKind::Consumer}, {"pv", ChannelKind::Generator}}));
    const std::vector<Timestamp> ts{0, 3600, 7200};
    const auto frames = build_frames(
        star, {{"fridge", symbols("fridge", {'a', 'b', 'c'}, ts)}, {"pv", symbols("pv", {'d', 'd', 'a'}, ts)}},
        {{"fridge", {1, 1, 1}}, {"pv", {2, 2, 2}}}, 0.0);
    for (const auto& f : frames) {
        CHECK(f.edges.size() == star.leaves.size());
    }
    CHECK(frames[2].edges[1] == TemporalEdge{"pv", "meter", 7200, 'a'});
}

TEST_CASE("on threshold is strict")
{
    const auto star =
        build_static_motif(star_series({{"a", ChannelKind::Consumer}, {"b", ChannelKind::Consumer}}));
    const auto frames = build_frames(star, {{"a", symbols("a", {'c'}, {0})}, {"b", symbols("b", {'c'}, {0})}},
                                     {{"a", {0.5}}, {"b", {0.5}}}, 0.5);
    REQUIRE(frames.size() == 1);
    CHECK(frames[0].edges.empty());
}

TEST_CASE("misaligned inputs are rejected")
{
    const auto star =
        build_static_motif(star_series({{"a", ChannelKind::Consumer}, {"b", ChannelKind::Consumer}}));
    auto run = [&](std::map<std::string, SymbolSeries> s, std::map<std::string, std::vector<double>> m) {
        try {
            build_frames(star, s, m, 0.0);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::Io;
    };
    CHECK(run({{"a", symbols("a", {'a'}, {0})}}, {{"a", {1}}, {"b", {1}}}) == ErrorCode::MisalignedWindows);
    CHECK(run({{"a", symbols("a", {'a'}, {0})}, {"b", symbols("b", {'a'}, {900})}}, {{"a", {1}}, {"b", {1}}}) ==
          ErrorCode::MisalignedWindows);
    CHECK(run({{"a", symbols("a", {'a'}, {0})}, {"b", symbols("b", {'a'}, {0})}}, {{"a", {1}}, {"b", {1, 2}}}) ==
          ErrorCode::MisalignedWindows);
}

TEST_CASE("trends between consecutive frames")
{
    const auto a4 = Alphabet::uniform(4);
    CHECK(annotate_trends(frame(0, {{"x", 'a'}}), frame(1, {{"x", 'c'}}), a4).at({"meter", "x"}) == Trend::Up);
    CHECK(annotate_trends(frame(0, {{"x", 'd'}}), frame(1, {{"x", 'b'}}), a4).at({"meter", "x"}) == Trend::Down);
    CHECK(annotate_trends(frame(0, {{"x", 'b'}}), frame(1, {{"x", 'b'}}), a4).at({"meter", "x"}) == Trend::Flat);
    CHECK(annotate_trends(frame(0, {}), frame(1, {{"x", 'b'}}), a4).at({"meter", "x"}) == Trend::Appear);
    CHECK(annotate_trends(frame(0, {{"x", 'b'}}), frame(1, {}), a4).at({"meter", "x"}) == Trend::Disappear);
    CHECK(annotate_trends(frame(0, {}), frame(1, {}), a4).empty());

    // Rank, not codepoint: 'z' is the lowest level here.
    const auto custom = Alphabet::create({'z', 'a'}, {0.5});
    CHECK(annotate_trends(frame(0, {{"x", 'z'}}), frame(1, {{"x", 'a'}}), custom).at({"meter", "x"}) == Trend::Up);
}

TEST_CASE("temporal motif assembly")
{
    const auto a4 = Alphabet::uniform(4);
    std::vector<MotifFrame> frames;
    for (int k = 0; k < 5; ++k) {
        frames.push_back(frame(k * 3600, {{"x", static_cast<char>('a' + k % 4)}}));
    }
    const std::vector<MotifFrame> three(frames.begin(), frames.begin() + 3);
    const auto one = assemble_temporal_motifs(three, 3, a4);
    REQUIRE(one.size() == 1);
    CHECK(one[0].delta() == 3);
    CHECK(one[0].trends.size() == 2);
    CHECK(one[0].trends[0] == TrendEntry{"meter", "x", 0, 3600, Trend::Up});

    CHECK(assemble_temporal_motifs(frames, 2, a4).size() == 4);  // 5 - 2 + 1

    const auto singles = assemble_temporal_motifs(frames, 1, a4);
    CHECK(singles.size() == 5);
    for (const auto& m : singles) {
        CHECK(m.trends.empty());
    }

    try {
        assemble_temporal_motifs(frames, 6, a4);
        FAIL("expected DeltaTooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DeltaTooLarge);
    }
    CHECK_THROWS_AS(assemble_temporal_motifs(frames, 0, a4), Error);
}

TEST_CASE("property: sliding count and trend antisymmetry")
{
    testing::Rng rng(17);
    const auto star = build_static_motif(star_series(
        {{"a", ChannelKind::Consumer}, {"b", ChannelKind::Consumer}, {"pv", ChannelKind::Generator}}));
    for (int trial = 0; trial < 200; ++trial) {
        const auto alphabet = testing::random_alphabet(rng);
        const std::size_t count = 1 + trial % 12;
        const auto frames = testing::random_frames(rng, star, count, alphabet, alphabet.size());
        for (std::size_t delta = 1; delta <= count; ++delta) {
            CHECK(assemble_temporal_motifs(frames, delta, alphabet).size() == count - delta + 1);
        }
        for (std::size_t k = 0; k + 1 < count; ++k) {
            const auto fwd = annotate_trends(frames[k], frames[k + 1], alphabet);
            const auto back = annotate_trends(frames[k + 1], frames[k], alphabet);
            CHECK(fwd.size() == back.size());
            for (const auto& [key, t] : fwd) {
                CHECK(back.at(key) == reverse(t));
            }
        }
    }
}
