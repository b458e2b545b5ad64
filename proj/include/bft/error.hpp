#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bft/rational.hpp"

namespace bft {

enum class ErrorCode {
    ParseError,
    SchemaError,
    UnknownCommand,
    MassSumNotOne,
    NegativeMass,
    CoordinateOutOfRange,
    DuplicatePoint,
    LengthMismatch,
    IndexOutOfRange,
    MartingaleViolation,
    DegeneratePrior,
    PriorOutOfRange,
    DimensionMismatch,
    InfeasibleProblem,
    NotACertificate,
    WrongArity,
    SubsetScanTooLarge,
    SearchSpaceTooLarge,
    InvalidThresholds,
    InvalidScheme,
    NotSymmetric,
    GridExcludesFeasibility,
    InvalidGrid,
    MissingObjectiveValue,
    NotFeasible,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);
    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Agents disagree on the mean posterior, so no common prior exists.
class MartingaleViolation : public Error {
public:
    explicit MartingaleViolation(std::vector<Rational> means);
    [[nodiscard]] const std::vector<Rational>& means() const noexcept { return means_; }

private:
    std::vector<Rational> means_;
};

}  // namespace bft
