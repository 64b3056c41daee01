#pragma once

#include <stdexcept>
#include <string>

namespace rectconf {

/// Failure categories. Each maps onto one CLI exit status.
enum class ErrorKind {
    Syntax,
    UnknownIdentifier,
    Arity,
    Domain,
    Degenerate,
    Regularity,
    FrenetUndefined,
    NonConformal,
    NotMonge,
    Capability,
    NonRectifying,
    Schema,
    UnresolvedReference,
    Usage,
};

const char* to_string(ErrorKind kind) noexcept;

/// True for failures that come from the numerics rather than from the input.
bool is_numerical(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Syntax, unknown identifier and arity failures carry the byte offset into the source.
class ParseError : public Error {
public:
    ParseError(ErrorKind kind, const std::string& message, std::size_t offset)
        : Error(kind, message + " at offset " + std::to_string(offset)), offset_(offset) {}

    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Evaluation left the real domain of a function; names the offending subexpression.
class EvalError : public Error {
public:
    EvalError(const std::string& message, std::string subexpression)
        : Error(ErrorKind::Domain, message + " in '" + subexpression + "'"),
          subexpression_(std::move(subexpression)) {}

    [[nodiscard]] const std::string& subexpression() const noexcept { return subexpression_; }

private:
    std::string subexpression_;
};

} // namespace rectconf
