#include "rectconf/error.hpp"

namespace rectconf {

const char* to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::UnknownIdentifier: return "unknown_identifier";
    case ErrorKind::Arity: return "arity";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::Regularity: return "regularity";
    case ErrorKind::FrenetUndefined: return "frenet_undefined";
    case ErrorKind::NonConformal: return "non_conformal";
    case ErrorKind::NotMonge: return "not_monge";
    case ErrorKind::Capability: return "capability";
    case ErrorKind::NonRectifying: return "non_rectifying";
    case ErrorKind::Schema: return "schema";
    case ErrorKind::UnresolvedReference: return "unresolved_reference";
    case ErrorKind::Usage: return "usage";
    }
    return "unknown";
}

bool is_numerical(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::Domain:
    case ErrorKind::Degenerate:
    case ErrorKind::Regularity:
    case ErrorKind::FrenetUndefined:
        return true;
    default:
        return false;
    }
}

} // namespace rectconf
