#include "biphoton/errors.hpp"

namespace biphoton {

std::string_view kind_name(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::NoSignChange: return "NoSignChange";
        case ErrorKind::Degenerate: return "Degenerate";
        case ErrorKind::GeometryError: return "GeometryError";
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::DegenerateGroupVelocity: return "DegenerateGroupVelocity";
        case ErrorKind::GridTooCoarse: return "GridTooCoarse";
        case ErrorKind::QuadratureWarning: return "QuadratureWarning";
        case ErrorKind::ResolutionTooFine: return "ResolutionTooFine";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ValidationError: return "ValidationError";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

bool is_config_error(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::ParseError:
        case ErrorKind::ValidationError:
        case ErrorKind::IoError:
        case ErrorKind::GeometryError:
            return true;
        default:
            return false;
    }
}

}  // namespace biphoton
