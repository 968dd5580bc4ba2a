#include "gridmotif/config.hpp"

#include "gridmotif/error.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace gridmotif {

using nlohmann::json;

Alphabet AlphabetSpec::build() const
{
    if (is_uniform()) {
        return Alphabet::uniform(symbols);
    }
    return Alphabet::create(labels, boundaries);
}

void PipelineConfig::validate() const
{
    if (window_length <= 0) {
        fail(ErrorCode::BadConfig, "window must be positive");
    }
    if (stride < 0 || effective_stride() > window_length) {
        fail(ErrorCode::BadConfig, "stride must be positive and no longer than the window");
    }
    if (delta < 1) {
        fail(ErrorCode::BadConfig, "delta must be at least 1");
    }
    if (!(epsilon_on >= 0.0)) {
        fail(ErrorCode::BadConfig, "epsilon_on must be a non-negative kW value");
    }
    if (!(tolerance >= 0.0)) {
        fail(ErrorCode::BadConfig, "tolerance must be non-negative");
    }
    try {
        alphabet.build();
    } catch (const Error& e) {
        fail(ErrorCode::BadConfig, e.what());
    }
}

namespace {

Seconds duration_field(const json& v, const char* key)
{
    if (v.is_string()) {
        return parse_duration(v.get<std::string>());
    }
    if (v.is_number_integer()) {
        return v.get<Seconds>();
    }
    fail(ErrorCode::BadConfig, std::string("\"") + key + "\" must be a duration like \"15m\"");
}

AlphabetSpec parse_alphabet(const json& v)
{
    AlphabetSpec spec;
    if (v.is_number_integer()) {
        spec.symbols = v.get<int>();
        return spec;
    }
    if (!v.is_object()) {
        fail(ErrorCode::BadConfig, "\"alphabet\" must be {\"symbols\": n} or {\"labels\": [...], \"boundaries\": [...]}");
    }
    if (v.contains("symbols")) {
        if (v.size() != 1 || !v["symbols"].is_number_integer()) {
            fail(ErrorCode::BadConfig, "\"alphabet\" {\"symbols\": n} takes a single integer");
        }
        spec.symbols = v["symbols"].get<int>();
        return spec;
    }
    if (!v.contains("labels") || !v.contains("boundaries") || v.size() != 2 || !v["labels"].is_array() ||
        !v["boundaries"].is_array()) {
        fail(ErrorCode::BadConfig, "explicit alphabet needs \"labels\" and \"boundaries\" arrays");
    }
    for (const auto& l : v["labels"]) {
        if (!l.is_string() || l.get<std::string>().size() != 1) {
            fail(ErrorCode::BadConfig, "alphabet labels must be single characters");
        }
        spec.labels.push_back(l.get<std::string>()[0]);
    }
    for (const auto& b : v["boundaries"]) {
        if (!b.is_number()) {
            fail(ErrorCode::BadConfig, "alphabet boundaries must be numbers");
        }
        spec.boundaries.push_back(b.get<double>());
    }
    spec.symbols = static_cast<int>(spec.labels.size());
    if (spec.labels.empty()) {
        fail(ErrorCode::BadConfig, "explicit alphabet needs at least one label");
    }
    return spec;
}

}  // namespace

PipelineConfig PipelineConfig::from_json_text(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorCode::BadConfig, std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        fail(ErrorCode::BadConfig, "config must be a JSON object");
    }
    static const std::set<std::string> known{"window",    "stride",    "delta",         "alphabet",
                                             "epsilon_on", "tolerance", "normalization", "unmetered"};
    PipelineConfig cfg;
    try {
        for (const auto& [key, value] : doc.items()) {
            if (!known.count(key)) {
                fail(ErrorCode::BadConfig, "unknown config key \"" + key + "\"");
            }
            if (key == "window") {
                cfg.window_length = duration_field(value, "window");
            } else if (key == "stride") {
                cfg.stride = duration_field(value, "stride");
                if (cfg.stride <= 0) {
                    fail(ErrorCode::BadConfig, "stride must be positive");
                }
            } else if (key == "delta") {
                if (!value.is_number_unsigned()) {
                    fail(ErrorCode::BadConfig, "\"delta\" must be a positive integer");
                }
                cfg.delta = value.get<std::size_t>();
            } else if (key == "alphabet") {
                cfg.alphabet = parse_alphabet(value);
            } else if (key == "epsilon_on") {
                if (!value.is_number()) {
                    fail(ErrorCode::BadConfig, "\"epsilon_on\" must be a number (kW)");
                }
                cfg.epsilon_on = value.get<double>();
            } else if (key == "tolerance") {
                if (!value.is_number()) {
                    fail(ErrorCode::BadConfig, "\"tolerance\" must be a number");
                }
                cfg.tolerance = value.get<double>();
            } else if (key == "normalization") {
                const auto s = value.is_string() ? value.get<std::string>() : std::string();
                if (s == "per-channel") {
                    cfg.normalization = NormalizationScope::PerChannel;
                } else if (s == "global") {
                    cfg.normalization = NormalizationScope::Global;
                } else {
                    fail(ErrorCode::BadConfig, "\"normalization\" must be \"per-channel\" or \"global\"");
                }
            } else if (key == "unmetered") {
                if (!value.is_boolean()) {
                    fail(ErrorCode::BadConfig, "\"unmetered\" must be true or false");
                }
                cfg.unmetered = value.get<bool>();
            }
        }
    } catch (const Error& e) {
        if (e.code() == ErrorCode::BadConfig) {
            throw;
        }
        fail(ErrorCode::BadConfig, e.what());
    }
    cfg.validate();
    return cfg;
}

PipelineConfig PipelineConfig::from_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::Io, "cannot open config " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

std::string PipelineConfig::to_json_text() const
{
    nlohmann::ordered_json doc;
    doc["window"] = format_duration(window_length);
    if (stride != 0) {
        doc["stride"] = format_duration(stride);
    }
    doc["delta"] = delta;
    if (alphabet.is_uniform()) {
        doc["alphabet"] = {{"symbols", alphabet.symbols}};
    } else {
        nlohmann::ordered_json labels = nlohmann::ordered_json::array();
        for (char c : alphabet.labels) {
            labels.push_back(std::string(1, c));
        }
        doc["alphabet"] = {{"labels", labels}, {"boundaries", alphabet.boundaries}};
    }
    doc["epsilon_on"] = epsilon_on;
    doc["tolerance"] = tolerance;
    doc["normalization"] = normalization == NormalizationScope::Global ? "global" : "per-channel";
    doc["unmetered"] = unmetered;
    return doc.dump(2);
}

}  // namespace gridmotif
