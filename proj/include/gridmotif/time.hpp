#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace gridmotif {

// Unix epoch seconds, UTC.
using Timestamp = std::int64_t;
// Whole seconds.
using Seconds = std::int64_t;

// Accepts integer epoch seconds or ISO-8601 date-times such as
// "2019-05-01T04:00:00Z", "2019-05-01 04:00:00-05" or "2019-05-01T04:00:00+05:30".
// A timestamp without an offset is taken as UTC.
Timestamp parse_timestamp(std::string_view text);

// "YYYY-MM-DDTHH:MM:SSZ"
std::string format_iso8601(Timestamp t);

// "90s", "15m", "1h", "1h30m", "2d" or a bare integer number of seconds.
Seconds parse_duration(std::string_view text);

// Canonical form used when re-serializing configs: largest units first,
// zero components omitted ("1h30m", "15m", "45s").
std::string format_duration(Seconds s);

}  // namespace gridmotif
