#include "gridmotif/error.hpp"

namespace gridmotif {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::DuplicateTimestamp: return "DuplicateTimestamp";
    case ErrorCode::NonUniformInterval: return "NonUniformInterval";
    case ErrorCode::NoMainsColumn: return "NoMainsColumn";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::NegativeResidual: return "NegativeResidual";
    case ErrorCode::ConservationViolation: return "ConservationViolation";
    case ErrorCode::PlanTooLong: return "PlanTooLong";
    case ErrorCode::ValueOutOfUnitInterval: return "ValueOutOfUnitInterval";
    case ErrorCode::BadSymbolCount: return "BadSymbolCount";
    case ErrorCode::BadAlphabet: return "BadAlphabet";
    case ErrorCode::NoChannels: return "NoChannels";
    case ErrorCode::IncompatibleResolution: return "IncompatibleResolution";
    case ErrorCode::WindowLongerThanSeries: return "WindowLongerThanSeries";
    case ErrorCode::InvalidPlan: return "InvalidPlan";
    case ErrorCode::MisalignedWindows: return "MisalignedWindows";
    case ErrorCode::DeltaTooLarge: return "DeltaTooLarge";
    case ErrorCode::InvalidDelta: return "InvalidDelta";
    case ErrorCode::NoCommonSpan: return "NoCommonSpan";
    case ErrorCode::MixedResolution: return "MixedResolution";
    case ErrorCode::BadHierarchy: return "BadHierarchy";
    case ErrorCode::MixedDelta: return "MixedDelta";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::BadTimestamp: return "BadTimestamp";
    case ErrorCode::Io: return "IoError";
    }
    return "Unknown";
}

}  // namespace gridmotif
