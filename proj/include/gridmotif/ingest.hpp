#pragma once

#include "gridmotif/time.hpp"

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace gridmotif {

enum class ChannelKind { Consumer, Generator, Mains };

std::string_view to_string(ChannelKind kind);

struct ChannelId {
    std::string name;
    ChannelKind kind = ChannelKind::Consumer;

    bool operator==(const ChannelId&) const = default;
};

// Which CSV column is the meter total and which columns produce power.
// Columns not listed are consumers.
struct ChannelSchema {
    std::string mains;
    std::vector<std::string> generators;

    static ChannelSchema from_json_text(std::string_view text);
    static ChannelSchema from_json_file(const std::filesystem::path& path);
    std::string to_json_text() const;
};

// Aligned multi-channel power readings for one node. Values are kW, rows
// are timestamps on a uniform grid, columns are channels. Immutable once
// built; create() enforces every invariant.
//
// Generator columns hold production magnitude (>= 0). The Mains column is
// the signed net import at the meter; it is only negative when the node
// exports more than it draws.
class MeterSeries {
public:
    static MeterSeries create(std::string node_id, std::vector<ChannelId> channels, std::vector<Timestamp> timestamps,
                              Seconds sample_interval, std::vector<double> row_major_samples);

    const std::string& node_id() const noexcept { return node_id_; }
    const std::vector<ChannelId>& channels() const noexcept { return channels_; }
    const std::vector<Timestamp>& timestamps() const noexcept { return timestamps_; }
    Seconds sample_interval() const noexcept { return sample_interval_; }

    std::size_t rows() const noexcept { return timestamps_.size(); }
    std::size_t cols() const noexcept { return channels_.size(); }
    double at(std::size_t row, std::size_t col) const { return samples_[row * channels_.size() + col]; }
    std::span<const double> row(std::size_t r) const
    {
        return {samples_.data() + r * channels_.size(), channels_.size()};
    }
    std::span<const double> samples() const noexcept { return samples_; }

    std::vector<double> column(std::size_t col) const;
    std::size_t mains_index() const noexcept { return mains_index_; }
    // Throws SchemaMismatch when absent.
    std::size_t index_of(std::string_view channel_name) const;

    // Returns a copy with one more column appended.
    MeterSeries with_channel(ChannelId channel, std::span<const double> values) const;

    bool operator==(const MeterSeries&) const = default;

private:
    MeterSeries() = default;

    std::string node_id_;
    std::vector<ChannelId> channels_;
    std::vector<Timestamp> timestamps_;
    Seconds sample_interval_ = 0;
    std::vector<double> samples_;
    std::size_t mains_index_ = 0;
};

// Schema that reproduces the channel kinds of an existing series.
ChannelSchema schema_of(const MeterSeries& series);

// Parses a CSV whose first column is `timestamp`. Rows are sorted; a
// single missing row is filled by linear interpolation, longer gaps are
// rejected. The node id defaults to the file stem.
MeterSeries load_csv(const std::filesystem::path& path, const ChannelSchema& schema, std::string node_id = {});
MeterSeries parse_csv(std::string_view text, const ChannelSchema& schema, std::string node_id);

// Epoch-second timestamps and shortest round-trip decimal values, so that
// load_csv(write_csv(s)) reproduces s bit for bit.
std::string to_csv(const MeterSeries& series);
void write_csv(const MeterSeries& series, const std::filesystem::path& path);

// residual = mains - sum(consumers) + sum(generators)
struct Residual {
    std::vector<double> values;
    double max_relative_violation = 0.0;
    double tolerance = 0.0;

    bool within_tolerance() const noexcept { return max_relative_violation <= tolerance; }
};

inline constexpr double kDivisionFloorKw = 1e-9;

Residual check_conservation(const MeterSeries& series, double tolerance);

inline constexpr const char* kUnmeteredChannel = "unmetered";

// Appends a Consumer channel "unmetered" holding max(residual, 0).
// Throws NegativeResidual when residual < -tolerance * |mains| anywhere.
MeterSeries synthesize_residual_channel(const MeterSeries& series, double tolerance);

}  // namespace gridmotif
