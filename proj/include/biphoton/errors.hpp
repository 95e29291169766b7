#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace biphoton {

enum class ErrorKind {
    InvalidArgument,
    OutOfRange,
    NoSignChange,
    Degenerate,
    GeometryError,
    NonConvergence,
    DegenerateGroupVelocity,
    GridTooCoarse,
    QuadratureWarning,
    ResolutionTooFine,
    ParseError,
    ValidationError,
    IoError,
};

std::string_view kind_name(ErrorKind kind) noexcept;

// Configuration problems map to exit code 1, everything numeric to 2.
bool is_config_error(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

}  // namespace biphoton
