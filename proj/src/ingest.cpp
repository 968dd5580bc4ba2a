#include "gridmotif/ingest.hpp"

#include "gridmotif/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace gridmotif {

using nlohmann::json;

std::string_view to_string(ChannelKind kind)
{
    switch (kind) {
    case ChannelKind::Consumer: return "consumer";
    case ChannelKind::Generator: return "generator";
    case ChannelKind::Mains: return "mains";
    }
    return "unknown";
}

ChannelSchema ChannelSchema::from_json_text(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorCode::BadConfig, std::string("schema is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("mains") || !doc["mains"].is_string()) {
        fail(ErrorCode::NoMainsColumn, "schema must name a \"mains\" column");
    }
    ChannelSchema schema;
    schema.mains = doc["mains"].get<std::string>();
    if (doc.contains("generators")) {
        const auto& gens = doc["generators"];
        if (!gens.is_array()) {
            fail(ErrorCode::BadConfig, "schema \"generators\" must be an array of column names");
        }
        for (const auto& g : gens) {
            if (!g.is_string()) {
                fail(ErrorCode::BadConfig, "schema \"generators\" must be an array of column names");
            }
            schema.generators.push_back(g.get<std::string>());
        }
    }
    return schema;
}

ChannelSchema ChannelSchema::from_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::Io, "cannot open schema " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

std::string ChannelSchema::to_json_text() const
{
    json doc = {{"mains", mains}, {"generators", generators}};
    return doc.dump();
}

MeterSeries MeterSeries::create(std::string node_id, std::vector<ChannelId> channels, std::vector<Timestamp> timestamps,
                                Seconds sample_interval, std::vector<double> row_major_samples)
{
    if (channels.empty()) {
        fail(ErrorCode::NoMainsColumn, "series '" + node_id + "' has no channels");
    }
    std::set<std::string> names;
    std::size_t mains_count = 0;
    std::size_t mains_index = 0;
    for (std::size_t c = 0; c < channels.size(); ++c) {
        if (channels[c].name.empty()) {
            fail(ErrorCode::SchemaMismatch, "empty channel name");
        }
        if (!names.insert(channels[c].name).second) {
            fail(ErrorCode::SchemaMismatch, "duplicate channel name '" + channels[c].name + "'");
        }
        if (channels[c].kind == ChannelKind::Mains) {
            ++mains_count;
            mains_index = c;
        }
    }
    if (mains_count != 1) {
        fail(ErrorCode::NoMainsColumn, "series '" + node_id + "' needs exactly one mains channel, found " +
                                           std::to_string(mains_count));
    }
    if (sample_interval <= 0) {
        fail(ErrorCode::NonUniformInterval, "sample interval must be positive");
    }
    if (timestamps.empty()) {
        fail(ErrorCode::MalformedRow, "series '" + node_id + "' has no rows");
    }
    for (std::size_t i = 1; i < timestamps.size(); ++i) {
        const Seconds step = timestamps[i] - timestamps[i - 1];
        if (step == 0) {
            fail(ErrorCode::DuplicateTimestamp, format_iso8601(timestamps[i]));
        }
        if (step != sample_interval) {
            fail(ErrorCode::NonUniformInterval, "step of " + std::to_string(step) + " s at " +
                                                    format_iso8601(timestamps[i]) + ", expected " +
                                                    std::to_string(sample_interval) + " s");
        }
    }
    if (row_major_samples.size() != timestamps.size() * channels.size()) {
        fail(ErrorCode::MalformedRow, "sample matrix is not rows x channels");
    }
    for (std::size_t i = 0; i < row_major_samples.size(); ++i) {
        const double v = row_major_samples[i];
        const auto& ch = channels[i % channels.size()];
        if (!std::isfinite(v)) {
            fail(ErrorCode::MalformedRow, "non-finite value in channel '" + ch.name + "'");
        }
        if (v < 0.0 && ch.kind != ChannelKind::Mains) {
            fail(ErrorCode::MalformedRow, "negative value in " + std::string(to_string(ch.kind)) + " channel '" +
                                              ch.name + "' at " + format_iso8601(timestamps[i / channels.size()]));
        }
    }

    MeterSeries s;
    s.node_id_ = std::move(node_id);
    s.channels_ = std::move(channels);
    s.timestamps_ = std::move(timestamps);
    s.sample_interval_ = sample_interval;
    s.samples_ = std::move(row_major_samples);
    s.mains_index_ = mains_index;
    return s;
}

std::vector<double> MeterSeries::column(std::size_t col) const
{
    std::vector<double> out(rows());
    for (std::size_t r = 0; r < rows(); ++r) {
        out[r] = at(r, col);
    }
    return out;
}

std::size_t MeterSeries::index_of(std::string_view channel_name) const
{
    for (std::size_t c = 0; c < channels_.size(); ++c) {
        if (channels_[c].name == channel_name) {
            return c;
        }
    }
    fail(ErrorCode::SchemaMismatch, "no channel '" + std::string(channel_name) + "' in '" + node_id_ + "'");
}

MeterSeries MeterSeries::with_channel(ChannelId channel, std::span<const double> values) const
{
    if (values.size() != rows()) {
        fail(ErrorCode::MalformedRow, "new channel '" + channel.name + "' has the wrong length");
    }
    auto channels = channels_;
    channels.push_back(std::move(channel));
    std::vector<double> samples;
    samples.reserve(rows() * channels.size());
    for (std::size_t r = 0; r < rows(); ++r) {
        auto existing = row(r);
        samples.insert(samples.end(), existing.begin(), existing.end());
        samples.push_back(values[r]);
    }
    return create(node_id_, std::move(channels), timestamps_, sample_interval_, std::move(samples));
}

ChannelSchema schema_of(const MeterSeries& series)
{
    ChannelSchema schema;
    for (const auto& ch : series.channels()) {
        if (ch.kind == ChannelKind::Mains) {
            schema.mains = ch.name;
        } else if (ch.kind == ChannelKind::Generator) {
            schema.generators.push_back(ch.name);
        }
    }
    return schema;
}

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        s = s.substr(1, s.size() - 2);
    }
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

struct RawRow {
    Timestamp t;
    std::vector<double> values;
    std::size_t line;
};

}  // namespace

MeterSeries parse_csv(std::string_view text, const ChannelSchema& schema, std::string node_id)
{
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    std::size_t line_no = 0;
    std::vector<std::size_t> line_numbers;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++line_no;
        auto line = text.substr(start, end - start);
        if (!trim(line).empty()) {
            lines.push_back(line);
            line_numbers.push_back(line_no);
        }
        start = end + 1;
    }
    if (lines.empty()) {
        fail(ErrorCode::MalformedRow, "empty CSV: no header row");
    }

    const auto header = split_fields(lines.front());
    if (header.size() < 2 || header.front() != "timestamp") {
        fail(ErrorCode::MalformedRow, "header must start with 'timestamp' followed by channel columns");
    }
    std::vector<ChannelId> channels;
    for (std::size_t i = 1; i < header.size(); ++i) {
        ChannelId ch{std::string(header[i]), ChannelKind::Consumer};
        if (ch.name.empty()) {
            fail(ErrorCode::MalformedRow, "empty column name in header");
        }
        if (ch.name == schema.mains) {
            ch.kind = ChannelKind::Mains;
        } else if (std::find(schema.generators.begin(), schema.generators.end(), ch.name) != schema.generators.end()) {
            ch.kind = ChannelKind::Generator;
        }
        channels.push_back(std::move(ch));
    }
    if (std::none_of(channels.begin(), channels.end(), [](const auto& c) { return c.kind == ChannelKind::Mains; })) {
        fail(ErrorCode::NoMainsColumn, "mains column '" + schema.mains + "' not in header");
    }
    for (const auto& g : schema.generators) {
        if (g == schema.mains) {
            fail(ErrorCode::SchemaMismatch, "column '" + g + "' cannot be both mains and generator");
        }
        if (std::none_of(channels.begin(), channels.end(), [&](const auto& c) { return c.name == g; })) {
            fail(ErrorCode::SchemaMismatch, "generator column '" + g + "' not in header");
        }
    }

    std::vector<RawRow> rows;
    rows.reserve(lines.size() - 1);
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto fields = split_fields(lines[li]);
        const std::string where = "line " + std::to_string(line_numbers[li]);
        if (fields.size() != header.size()) {
            fail(ErrorCode::MalformedRow, where + ": expected " + std::to_string(header.size()) + " fields, got " +
                                              std::to_string(fields.size()));
        }
        RawRow row;
        row.line = line_numbers[li];
        try {
            row.t = parse_timestamp(fields[0]);
        } catch (const Error& e) {
            fail(ErrorCode::MalformedRow, where + ": " + e.what());
        }
        row.values.resize(channels.size());
        for (std::size_t c = 0; c < channels.size(); ++c) {
            const auto f = fields[c + 1];
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (f.empty() || ec != std::errc{} || ptr != f.data() + f.size() || !std::isfinite(v)) {
                fail(ErrorCode::MalformedRow, where + ": bad number '" + std::string(f) + "' in column '" +
                                                  channels[c].name + "'");
            }
            row.values[c] = v;
        }
        rows.push_back(std::move(row));
    }
    if (rows.size() < 2) {
        fail(ErrorCode::MalformedRow, "need at least two data rows to infer the sample interval");
    }

    std::stable_sort(rows.begin(), rows.end(), [](const RawRow& a, const RawRow& b) { return a.t < b.t; });
    Seconds interval = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const Seconds step = rows[i].t - rows[i - 1].t;
        if (step == 0) {
            fail(ErrorCode::DuplicateTimestamp, "line " + std::to_string(rows[i].line) + ": " +
                                                    format_iso8601(rows[i].t) + " appears twice");
        }
        interval = interval == 0 ? step : std::min(interval, step);
    }

    std::vector<Timestamp> timestamps;
    std::vector<double> samples;
    timestamps.reserve(rows.size() + rows.size() / 2);
    samples.reserve(timestamps.capacity() * channels.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0) {
            const Seconds step = rows[i].t - rows[i - 1].t;
            if (step == 2 * interval) {
                timestamps.push_back(rows[i - 1].t + interval);
                for (std::size_t c = 0; c < channels.size(); ++c) {
                    samples.push_back(0.5 * (rows[i - 1].values[c] + rows[i].values[c]));
                }
            } else if (step != interval) {
                fail(ErrorCode::NonUniformInterval, "gap of " + std::to_string(step) + " s before " +
                                                        format_iso8601(rows[i].t) + " (sample interval " +
                                                        std::to_string(interval) + " s)");
            }
        }
        timestamps.push_back(rows[i].t);
        samples.insert(samples.end(), rows[i].values.begin(), rows[i].values.end());
    }
    return MeterSeries::create(std::move(node_id), std::move(channels), std::move(timestamps), interval,
                               std::move(samples));
}

MeterSeries load_csv(const std::filesystem::path& path, const ChannelSchema& schema, std::string node_id)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorCode::Io, "cannot open " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    if (node_id.empty()) {
        node_id = path.stem().string();
    }
    return parse_csv(buf.str(), schema, std::move(node_id));
}

std::string to_csv(const MeterSeries& series)
{
    std::string out = "timestamp";
    for (const auto& ch : series.channels()) {
        out += ',';
        out += ch.name;
    }
    out += '\n';
    char buf[64];
    for (std::size_t r = 0; r < series.rows(); ++r) {
        out += std::to_string(series.timestamps()[r]);
        for (double v : series.row(r)) {
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
            out += ',';
            out.append(buf, ptr);
        }
        out += '\n';
    }
    return out;
}

void write_csv(const MeterSeries& series, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        fail(ErrorCode::Io, "cannot write " + path.string());
    }
    out << to_csv(series);
}

namespace {

std::vector<double> residual_values(const MeterSeries& series)
{
    std::vector<double> out(series.rows(), 0.0);
    for (std::size_t r = 0; r < series.rows(); ++r) {
        double balance = 0.0;
        double mains = 0.0;
        for (std::size_t c = 0; c < series.cols(); ++c) {
            switch (series.channels()[c].kind) {
            case ChannelKind::Mains: mains = series.at(r, c); break;
            case ChannelKind::Consumer: balance -= series.at(r, c); break;
            case ChannelKind::Generator: balance += series.at(r, c); break;
            }
        }
        out[r] = mains + balance;
    }
    return out;
}

}  // namespace

Residual check_conservation(const MeterSeries& series, double tolerance)
{
    Residual res;
    res.tolerance = tolerance;
    res.values = residual_values(series);
    const auto mains = series.mains_index();
    for (std::size_t r = 0; r < series.rows(); ++r) {
        const double denom = std::max(std::abs(series.at(r, mains)), kDivisionFloorKw);
        res.max_relative_violation = std::max(res.max_relative_violation, std::abs(res.values[r]) / denom);
    }
    return res;
}

MeterSeries synthesize_residual_channel(const MeterSeries& series, double tolerance)
{
    const auto residual = residual_values(series);
    const auto mains = series.mains_index();
    std::vector<double> unmetered(series.rows());
    for (std::size_t r = 0; r < series.rows(); ++r) {
        const double limit = tolerance * std::abs(series.at(r, mains));
        if (residual[r] < -limit) {
            fail(ErrorCode::NegativeResidual,
                 "residual " + std::to_string(residual[r]) + " kW at " + format_iso8601(series.timestamps()[r]) +
                     " exceeds tolerance; is a generator labelled as a consumer?");
        }
        unmetered[r] = std::max(residual[r], 0.0);
    }
    return series.with_channel({kUnmeteredChannel, ChannelKind::Consumer}, unmetered);
}

}  // namespace gridmotif
