#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ignorance {

enum class ErrorCode {
    EmptyEvent,
    DomainMismatch,
    SpaceMismatch,
    CapExceeded,
    InvalidArgument,
    NoVacuousRepresentation,
    ZeroPlausibilityEvent,
    NotTabulated,
    EmptyOutcomeSet,
    FrameworkMismatch,
    UnsupportedCombination,
    ParseError,
    ValidationError,
    UnknownSuite,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::EmptyEvent: return "EmptyEvent";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NoVacuousRepresentation: return "NoVacuousRepresentation";
    case ErrorCode::ZeroPlausibilityEvent: return "ZeroPlausibilityEvent";
    case ErrorCode::NotTabulated: return "NotTabulated";
    case ErrorCode::EmptyOutcomeSet: return "EmptyOutcomeSet";
    case ErrorCode::FrameworkMismatch: return "FrameworkMismatch";
    case ErrorCode::UnsupportedCombination: return "UnsupportedCombination";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    }
    return "Unknown";
}

/// Every failure raised by the engine carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace ignorance
