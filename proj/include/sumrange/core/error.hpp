#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sumrange {

enum class ErrorCode {
    InvalidArgument,
    SpecParse,
    PrecisionInsufficient,
    MetadataMissing,
    Exhausted,
    NoNullSubsequence,
    TargetNotInLPR,
    TargetNotInRange,
    GrowthViolation,
    NotEnoughZeros,
    Unsupported,
    CertificateInvalid,
    NoLimitPoint,
    FamilyNotSupported,
    TailDeviationDiverges,
    DeltaInfinite,
    BijectionViolation,
    Overflow,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception. Every failure path named by an operation contract
/// surfaces as one of these with the matching code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace sumrange
