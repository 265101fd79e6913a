#pragma once

#include <stdexcept>
#include <string>

namespace microloc {

/// Coarse classification used by the command-line front end to pick an exit code.
enum class ErrorCategory {
    Internal,     // invariant violation or misuse of the library
    Parse,        // malformed operator text
    Unsupported,  // input outside the hypotheses we can handle
    Precision,    // truncation window too small for the request
};

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), category_(category), kind_(std::move(kind)) {}

    ErrorCategory category() const noexcept { return category_; }
    const std::string& kind() const noexcept { return kind_; }

private:
    ErrorCategory category_;
    std::string kind_;
};

#define MICROLOC_DEFINE_ERROR(Name, Category)                                  \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(Category, #Name, what) {} \
    };

MICROLOC_DEFINE_ERROR(VariableMismatch, ErrorCategory::Internal)
MICROLOC_DEFINE_ERROR(FlavorMismatch, ErrorCategory::Internal)
MICROLOC_DEFINE_ERROR(PrimeMismatch, ErrorCategory::Internal)
MICROLOC_DEFINE_ERROR(NotAUnit, ErrorCategory::Unsupported)
MICROLOC_DEFINE_ERROR(ZeroDivisor, ErrorCategory::Unsupported)
MICROLOC_DEFINE_ERROR(FieldExtensionRequired, ErrorCategory::Unsupported)
MICROLOC_DEFINE_ERROR(SymbolNotAdmissible, ErrorCategory::Unsupported)
MICROLOC_DEFINE_ERROR(NotLocalizable, ErrorCategory::Unsupported)
MICROLOC_DEFINE_ERROR(DegreeBoundExceeded, ErrorCategory::Unsupported)
MICROLOC_DEFINE_ERROR(NotDominant, ErrorCategory::Unsupported)
MICROLOC_DEFINE_ERROR(ConditionIViolated, ErrorCategory::Unsupported)
MICROLOC_DEFINE_ERROR(UnitCheckFailed, ErrorCategory::Unsupported)
MICROLOC_DEFINE_ERROR(PrecisionExhausted, ErrorCategory::Precision)
MICROLOC_DEFINE_ERROR(WindowInconclusive, ErrorCategory::Precision)

#undef MICROLOC_DEFINE_ERROR

/// Malformed operator text; `position` is the 0-based offset of the offending character.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(ErrorCategory::Parse, "ParseError", what + " at position " + std::to_string(position)),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace microloc
