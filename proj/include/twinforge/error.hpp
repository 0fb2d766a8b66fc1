#pragma once

#include <stdexcept>
#include <string>

namespace twinforge {

enum class ErrorKind {
    InvalidInput,
    InvalidElement,
    NotPartialOrder,
    NonUniqueMaximalLowerBound,
    InverseMismatch,
    Incomparable,
    Inconsistent,
    InvalidDSequence,
    NotASolution,
    BlueprintInconsistent,
    FamilyInvalid,
    FamilyViolatesUniformity,
    BudgetExceeded,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::InvalidElement: return "InvalidElement";
    case ErrorKind::NotPartialOrder: return "NotPartialOrder";
    case ErrorKind::NonUniqueMaximalLowerBound: return "NonUniqueMaximalLowerBound";
    case ErrorKind::InverseMismatch: return "InverseMismatch";
    case ErrorKind::Incomparable: return "Incomparable";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::InvalidDSequence: return "InvalidDSequence";
    case ErrorKind::NotASolution: return "NotASolution";
    case ErrorKind::BlueprintInconsistent: return "BlueprintInconsistent";
    case ErrorKind::FamilyInvalid: return "FamilyInvalid";
    case ErrorKind::FamilyViolatesUniformity: return "FamilyViolatesUniformity";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) throw Error(kind, what);
}

} // namespace twinforge
