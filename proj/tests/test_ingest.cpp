#include "gridmotif/error.hpp"
#include "gridmotif/ingest.hpp"

#include "support/generators.hpp"

#include <doctest.h>

#include <filesystem>
#include <string>

using namespace gridmotif;

namespace {

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::Io;
}

const ChannelSchema kSchema{"mains", {}};

std::string quarter_hour_csv(int rows)
{
    std::string csv = "timestamp,mains,fridge,oven\n";
    for (int i = 0; i < rows; ++i) {
        csv += std::to_string(1556683200 + 900 * i) + "," + std::to_string(2 + i) + ",1," + std::to_string(1 + i) +
               "\n";
    }
    return csv;
}

}  // namespace

TEST_CASE("twelve quarter-hour rows load with a 900 s interval")
{
    const auto s = parse_csv(quarter_hour_csv(12), kSchema, "h");
    CHECK(s.rows() == 12);
    CHECK(s.cols() == 3);
    CHECK(s.sample_interval() == 900);
    CHECK(s.channels()[s.mains_index()].name == "mains");
    CHECK(s.channels()[1].kind == ChannelKind::Consumer);
}

TEST_CASE("rows are sorted by timestamp")
{
    const std::string csv = "timestamp,mains,a\n"
                            "2019-05-01T04:30:00Z,3,3\n"
                            "2019-05-01T04:00:00Z,1,1\n"
                            "2019-05-01T04:15:00Z,2,2\n";
    const auto s = parse_csv(csv, kSchema, "h");
    CHECK(s.column(1) == std::vector<double>{1, 2, 3});
}

TEST_CASE("duplicate timestamps are rejected")
{
    const std::string csv = "timestamp,mains,a\n0,1,1\n900,1,1\n900,2,2\n";
    CHECK(code_of([&] { parse_csv(csv, kSchema, "h"); }) == ErrorCode::DuplicateTimestamp);
}

TEST_CASE("a single missing row is filled with the neighbours' midpoint")
{
    const std::string csv = "timestamp,mains,a,b\n0,1,1,0\n900,3,2,1\n2700,7,4,3\n3600,8,5,3\n";
    const auto s = parse_csv(csv, kSchema, "h");
    REQUIRE(s.rows() == 5);
    CHECK(s.timestamps()[2] == 1800);
    // midpoint of the rows at 900 s and 2700 s
    CHECK(s.at(2, 0) == doctest::Approx((3.0 + 7.0) / 2));
    CHECK(s.at(2, 1) == doctest::Approx((2.0 + 4.0) / 2));
    CHECK(s.at(2, 2) == doctest::Approx((1.0 + 3.0) / 2));
}

TEST_CASE("two consecutive missing rows are not imputed")
{
    const std::string csv = "timestamp,mains,a\n0,1,1\n900,1,1\n3600,1,1\n";
    CHECK(code_of([&] { parse_csv(csv, kSchema, "h"); }) == ErrorCode::NonUniformInterval);
}

TEST_CASE("malformed input")
{
    CHECK(code_of([] { parse_csv("", kSchema, "h"); }) == ErrorCode::MalformedRow);
    CHECK(code_of([] { parse_csv("timestamp,mains,a\n", kSchema, "h"); }) == ErrorCode::MalformedRow);
    CHECK(code_of([] { parse_csv("timestamp,mains,a\n0,1\n900,1,1\n", kSchema, "h"); }) == ErrorCode::MalformedRow);
    CHECK(code_of([] { parse_csv("timestamp,mains,a\n0,1,x\n900,1,1\n", kSchema, "h"); }) == ErrorCode::MalformedRow);
    CHECK(code_of([] { parse_csv("timestamp,mains,a\n0,1,-1\n900,1,1\n", kSchema, "h"); }) ==
          ErrorCode::MalformedRow);
    CHECK(code_of([] { parse_csv("time,mains,a\n0,1,1\n900,1,1\n", kSchema, "h"); }) == ErrorCode::MalformedRow);
    CHECK(code_of([] { parse_csv("timestamp,grid,a\n0,1,1\n900,1,1\n", kSchema, "h"); }) ==
          ErrorCode::NoMainsColumn);
    CHECK(code_of([] { parse_csv("timestamp,mains,a\n0,1,1\n900,1,1\n", {"mains", {"pv"}}, "h"); }) ==
          ErrorCode::SchemaMismatch);
    CHECK(code_of([] { load_csv("/nonexistent/file.csv", kSchema); }) == ErrorCode::Io);
}

TEST_CASE("schema JSON assigns kinds")
{
    const auto schema = ChannelSchema::from_json_text(R"({"mains": "grid", "generators": ["solar"]})");
    const auto s = parse_csv("timestamp,grid,solar,air\n0,1,1,2\n900,1,1,2\n", schema, "h");
    CHECK(s.channels()[0].kind == ChannelKind::Mains);
    CHECK(s.channels()[1].kind == ChannelKind::Generator);
    CHECK(s.channels()[2].kind == ChannelKind::Consumer);
    CHECK(code_of([] { ChannelSchema::from_json_text(R"({"generators": []})"); }) == ErrorCode::NoMainsColumn);
}

TEST_CASE("conservation residual")
{
    auto make = [](std::vector<ChannelId> ch, std::vector<double> samples, std::size_t rows) {
        std::vector<Timestamp> ts;
        for (std::size_t i = 0; i < rows; ++i) {
            ts.push_back(static_cast<Timestamp>(i) * 900);
        }
        return MeterSeries::create("h", std::move(ch), ts, 900, std::move(samples));
    };
    SUBCASE("exact")
    {
        const auto s = make({{"m", ChannelKind::Mains}, {"a", ChannelKind::Consumer}, {"b", ChannelKind::Consumer}},
                            {5, 2, 3, 5, 4, 1}, 2);
        const auto r = check_conservation(s, 0.01);
        CHECK(r.values == std::vector<double>{0, 0});
        CHECK(r.max_relative_violation == 0.0);
        CHECK(r.within_tolerance());
    }
    SUBCASE("unmetered load")
    {
        const auto s = make({{"m", ChannelKind::Mains}, {"a", ChannelKind::Consumer}}, {10, 8}, 1);
        const auto r = check_conservation(s, 0.01);
        CHECK(r.values == std::vector<double>{2});
        CHECK(r.max_relative_violation == doctest::Approx(0.2));
        CHECK_FALSE(r.within_tolerance());
    }
    SUBCASE("generation adds to supply")
    {
        // Worked by hand: the meter imports 10 kW and the panel adds 2 kW,
        // so 12 kW is available and 8 kW is metered: 4 kW is unaccounted.
        const auto s = make({{"m", ChannelKind::Mains}, {"a", ChannelKind::Consumer}, {"pv", ChannelKind::Generator}},
                            {10, 8, 2}, 1);
        CHECK(check_conservation(s, 0.01).values == std::vector<double>{4});
    }
}

TEST_CASE("unmetered channel")
{
    std::vector<Timestamp> ts{0, 900, 1800};
    const auto s = MeterSeries::create("h", {{"m", ChannelKind::Mains}, {"a", ChannelKind::Consumer}}, ts, 900,
                                       {5, 3, 4, 4, 2, 1});
    const auto with = synthesize_residual_channel(s, 0.01);
    REQUIRE(with.cols() == 3);
    CHECK(with.channels()[2] == ChannelId{"unmetered", ChannelKind::Consumer});
    CHECK(with.column(2) == std::vector<double>{2, 0, 1});
    CHECK(s.cols() == 2);
    CHECK(check_conservation(with, 0.01).max_relative_violation <= 0.01);

    const auto zero = MeterSeries::create("h", {{"m", ChannelKind::Mains}, {"a", ChannelKind::Consumer}}, {0, 900},
                                          900, {1, 1, 2, 2});
    CHECK(synthesize_residual_channel(zero, 0.01).column(2) == std::vector<double>{0, 0});

    const auto negative =
        MeterSeries::create("h", {{"m", ChannelKind::Mains}, {"a", ChannelKind::Consumer}}, {0}, 900, {10, 10.5});
    CHECK(code_of([&] { synthesize_residual_channel(negative, 0.01); }) == ErrorCode::NegativeResidual);
    // within tolerance: clipped to zero
    CHECK(synthesize_residual_channel(negative, 0.1).column(2) == std::vector<double>{0});
}

TEST_CASE("property: synthesizing the residual restores conservation")
{
    testing::Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const auto base = testing::random_series(rng, 3, 1, 16);
        // Add random unmetered load on top of mains.
        std::vector<double> samples(base.samples().begin(), base.samples().end());
        auto extra = testing::random_values(rng, base.rows(), 0.0, 2.0);
        for (std::size_t r = 0; r < base.rows(); ++r) {
            samples[r * base.cols() + base.mains_index()] += extra[r];
        }
        const auto s = MeterSeries::create(base.node_id(), base.channels(), base.timestamps(),
                                           base.sample_interval(), samples);
        const auto fixed = synthesize_residual_channel(s, 0.05);
        CHECK(check_conservation(fixed, 0.05).within_tolerance());
    }
}

TEST_CASE("property: CSV round trip is bit exact and deterministic")
{
    testing::Rng rng(11);
    const auto dir = std::filesystem::temp_directory_path() / "gridmotif_ingest_rt";
    std::filesystem::create_directories(dir);
    for (int trial = 0; trial < 25; ++trial) {
        const auto s = testing::random_series(rng, 1 + trial % 4, trial % 2, 8 + trial, "rt");
        const auto path = dir / "rt.csv";
        write_csv(s, path);
        const auto back = load_csv(path, schema_of(s));
        CHECK(back == s);
        CHECK(load_csv(path, schema_of(s)) == back);
    }
    std::filesystem::remove_all(dir);
}
