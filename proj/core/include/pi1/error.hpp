#pragma once

#include <stdexcept>
#include <string>

namespace pi1 {

// One error taxonomy for the whole library. The CLI maps kinds onto exit
// codes, so every throw site picks the kind deliberately.
enum class ErrorKind {
    Parse,
    UndefinedComposition,
    UnknownElement,
    WeakAxiomViolation,
    ClearanceViolation,
    EndpointMismatch,
    NotClosed,
    EmptySector,
    BudgetExceeded,
    Domain,
};

inline const char* to_string(ErrorKind kind)
{
    switch (kind) {
        case ErrorKind::Parse: return "parse";
        case ErrorKind::UndefinedComposition: return "undefined-composition";
        case ErrorKind::UnknownElement: return "unknown-element";
        case ErrorKind::WeakAxiomViolation: return "weak-axiom-violation";
        case ErrorKind::ClearanceViolation: return "clearance-violation";
        case ErrorKind::EndpointMismatch: return "endpoint-mismatch";
        case ErrorKind::NotClosed: return "not-closed";
        case ErrorKind::EmptySector: return "empty-sector";
        case ErrorKind::BudgetExceeded: return "budget-exceeded";
        case ErrorKind::Domain: return "domain";
    }
    return "domain";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message)
{
    throw Error(kind, message);
}

} // namespace pi1
