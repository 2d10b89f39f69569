#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace assouad {

/// Failure categories raised by the library. The CLI maps these onto exit codes.
enum class ErrorKind {
    EmptySubshift,
    InvalidSymbol,
    DuplicatePair,
    EnumerationCapExceeded,
    StateBlowup,
    NonConvergence,
    EmptyInput,
    InvalidScale,
    ScaleOrder,
    CenterBlockNotAllowed,
    InvalidCenter,
    InvalidSystem,
    ConditionalNotConverged,
    ThetaOutOfRange,
    ScaleWindow,
    DegenerateGrid,
    EmptyTable,
    CapExceeded,
    InvalidArgument,
    ConfigSyntax,
    ConfigSchema,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    /// True for the errors that signal a resource cap rather than bad input.
    bool is_cap() const noexcept {
        return kind_ == ErrorKind::EnumerationCapExceeded || kind_ == ErrorKind::StateBlowup ||
               kind_ == ErrorKind::CapExceeded;
    }

private:
    ErrorKind kind_;
};

}  // namespace assouad
