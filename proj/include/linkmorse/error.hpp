#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace linkmorse {

enum class ErrorKind {
    // Rejected input.
    ParseError,
    NonPositiveLength,
    TooFewEdges,
    DegenerateLinkage,
    EmptyModuliSpace,
    SizeGuard,
    InvalidLabel,
    // Violated preconditions of a query.
    MemberOverlap,
    NotShort,
    MissingN,
    NotCritical,
    Unmatched,
    PathCapExceeded,
    // Broken internal invariants; these indicate a bug in this library.
    InconsistentMatch,
    AmbiguousStep,
    FieldAxiomViolation,
    // A structural claim about the construction did not hold.
    ClassificationGap,
    NonUniquePath,
    DuplicateEndpoint,
    PredictionMismatch,
    NonzeroDifferential,
};

enum class ErrorCategory { Input, Precondition, Bug, Falsification };

constexpr ErrorCategory category_of(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::NonPositiveLength:
    case ErrorKind::TooFewEdges:
    case ErrorKind::DegenerateLinkage:
    case ErrorKind::EmptyModuliSpace:
    case ErrorKind::SizeGuard:
    case ErrorKind::InvalidLabel:
        return ErrorCategory::Input;
    case ErrorKind::MemberOverlap:
    case ErrorKind::NotShort:
    case ErrorKind::MissingN:
    case ErrorKind::NotCritical:
    case ErrorKind::Unmatched:
    case ErrorKind::PathCapExceeded:
        return ErrorCategory::Precondition;
    case ErrorKind::InconsistentMatch:
    case ErrorKind::AmbiguousStep:
    case ErrorKind::FieldAxiomViolation:
        return ErrorCategory::Bug;
    case ErrorKind::ClassificationGap:
    case ErrorKind::NonUniquePath:
    case ErrorKind::DuplicateEndpoint:
    case ErrorKind::PredictionMismatch:
    case ErrorKind::NonzeroDifferential:
        return ErrorCategory::Falsification;
    }
    return ErrorCategory::Bug;
}

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }
    ErrorCategory category() const noexcept { return category_of(kind_); }

private:
    ErrorKind kind_;
};

} // namespace linkmorse
