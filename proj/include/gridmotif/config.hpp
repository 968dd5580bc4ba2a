#pragma once

#include "gridmotif/symbolize.hpp"
#include "gridmotif/time.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace gridmotif {

// Either {"symbols": n} or {"labels": [...], "boundaries": [...]}.
struct AlphabetSpec {
    int symbols = 4;
    std::vector<char> labels;
    std::vector<double> boundaries;

    bool is_uniform() const noexcept { return labels.empty(); }
    Alphabet build() const;

    bool operator==(const AlphabetSpec&) const = default;
};

// Every pipeline parameter. Defaults: 1 h non-overlapping windows, four
// uniform levels, delta = 3, a channel is on above 0 kW.
struct PipelineConfig {
    Seconds window_length = 3600;
    // 0 means "same as window_length".
    Seconds stride = 0;
    std::size_t delta = 3;
    AlphabetSpec alphabet;
    double epsilon_on = 0.0;
    double tolerance = 0.05;
    NormalizationScope normalization = NormalizationScope::PerChannel;
    // Append an "unmetered" channel for the conservation residual instead
    // of failing when the residual exceeds the tolerance.
    bool unmetered = false;

    Seconds effective_stride() const noexcept { return stride == 0 ? window_length : stride; }

    // Throws BadConfig on any parameter that a later stage would reject.
    void validate() const;

    static PipelineConfig from_json_text(std::string_view text);
    static PipelineConfig from_json_file(const std::filesystem::path& path);
    // Canonical form: fixed key order, durations as "1h30m" strings.
    std::string to_json_text() const;

    bool operator==(const PipelineConfig&) const = default;
};

}  // namespace gridmotif
