#include "ksmooth/error.hpp"

namespace ksmooth {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotSymmetric: return "NotSymmetric";
        case ErrorKind::NotFullDimensional: return "NotFullDimensional";
        case ErrorKind::ScopeExceeded: return "ScopeExceeded";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NotUnitVector: return "NotUnitVector";
        case ErrorKind::ZeroOperator: return "ZeroOperator";
        case ErrorKind::UnsupportedSpacePair: return "UnsupportedSpacePair";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::WrongSpaces: return "WrongSpaces";
        case ErrorKind::NotNormalized: return "NotNormalized";
        case ErrorKind::NotUnitNorm: return "NotUnitNorm";
        case ErrorKind::NoGap: return "NoGap";
        case ErrorKind::GenerationExhausted: return "GenerationExhausted";
        case ErrorKind::UnknownTheorem: return "UnknownTheorem";
        case ErrorKind::ModeMismatch: return "ModeMismatch";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ValidationError: return "ValidationError";
        case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace ksmooth
