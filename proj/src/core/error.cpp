#include "sumrange/core/error.hpp"

namespace sumrange {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SpecParse: return "SpecParse";
    case ErrorCode::PrecisionInsufficient: return "PrecisionInsufficient";
    case ErrorCode::MetadataMissing: return "MetadataMissing";
    case ErrorCode::Exhausted: return "Exhausted";
    case ErrorCode::NoNullSubsequence: return "NoNullSubsequence";
    case ErrorCode::TargetNotInLPR: return "TargetNotInLPR";
    case ErrorCode::TargetNotInRange: return "TargetNotInRange";
    case ErrorCode::GrowthViolation: return "GrowthViolation";
    case ErrorCode::NotEnoughZeros: return "NotEnoughZeros";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::CertificateInvalid: return "CertificateInvalid";
    case ErrorCode::NoLimitPoint: return "NoLimitPoint";
    case ErrorCode::FamilyNotSupported: return "FamilyNotSupported";
    case ErrorCode::TailDeviationDiverges: return "TailDeviationDiverges";
    case ErrorCode::DeltaInfinite: return "DeltaInfinite";
    case ErrorCode::BijectionViolation: return "BijectionViolation";
    case ErrorCode::Overflow: return "Overflow";
    }
    return "Unknown";
}

} // namespace sumrange
