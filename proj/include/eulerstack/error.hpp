#pragma once

#include <stdexcept>
#include <string>

namespace eulerstack {

// Every failure mode the engine can report. Construction-time axiom
// violations and domain errors share one exception type so the CLI can
// map them to a single exit code.
enum class ErrorCode {
    NotClosed,
    NotAssociative,
    NoIdentity,
    NoInverse,
    NotASubgroup,
    NotAHomomorphism,
    UnsupportedGroup,
    UndefinedWeight,
    Undefined,
    StackMismatch,
    UnknownStratum,
    NotConstructible,
    InvalidMorphism,
    ZeroKernelChi,
    InsufficientStabData,
    NotFiniteType,
    NotRepresentable,
    NonFiniteStabilizer,
    NotAnAction,
    Overflow,
    Parse,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotClosed: return "NotClosed";
        case ErrorCode::NotAssociative: return "NotAssociative";
        case ErrorCode::NoIdentity: return "NoIdentity";
        case ErrorCode::NoInverse: return "NoInverse";
        case ErrorCode::NotASubgroup: return "NotASubgroup";
        case ErrorCode::NotAHomomorphism: return "NotAHomomorphism";
        case ErrorCode::UnsupportedGroup: return "UnsupportedGroup";
        case ErrorCode::UndefinedWeight: return "UndefinedWeight";
        case ErrorCode::Undefined: return "Undefined";
        case ErrorCode::StackMismatch: return "StackMismatch";
        case ErrorCode::UnknownStratum: return "UnknownStratum";
        case ErrorCode::NotConstructible: return "NotConstructible";
        case ErrorCode::InvalidMorphism: return "InvalidMorphism";
        case ErrorCode::ZeroKernelChi: return "ZeroKernelChi";
        case ErrorCode::InsufficientStabData: return "InsufficientStabData";
        case ErrorCode::NotFiniteType: return "NotFiniteType";
        case ErrorCode::NotRepresentable: return "NotRepresentable";
        case ErrorCode::NonFiniteStabilizer: return "NonFiniteStabilizer";
        case ErrorCode::NotAnAction: return "NotAnAction";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::Parse: return "Parse";
    }
    return "Unknown";
}

} // namespace eulerstack
