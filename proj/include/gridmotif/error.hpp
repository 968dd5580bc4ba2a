#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gridmotif {

enum class ErrorCode {
    MalformedRow,
    DuplicateTimestamp,
    NonUniformInterval,
    NoMainsColumn,
    SchemaMismatch,
    NegativeResidual,
    ConservationViolation,
    PlanTooLong,
    ValueOutOfUnitInterval,
    BadSymbolCount,
    BadAlphabet,
    NoChannels,
    IncompatibleResolution,
    WindowLongerThanSeries,
    InvalidPlan,
    MisalignedWindows,
    DeltaTooLarge,
    InvalidDelta,
    NoCommonSpan,
    MixedResolution,
    BadHierarchy,
    MixedDelta,
    InvalidArgument,
    BadConfig,
    BadTimestamp,
    Io,
};

std::string_view to_string(ErrorCode code);

// Every failure the library reports. Io errors map to CLI exit code 2,
// everything else is a validation failure (exit code 1).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }
    bool is_io() const noexcept { return code_ == ErrorCode::Io; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message)
{
    throw Error(code, message);
}

}  // namespace gridmotif
