#include "bft/error.hpp"

#include <sstream>

namespace bft {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::UnknownCommand: return "UnknownCommand";
        case ErrorCode::MassSumNotOne: return "MassSumNotOne";
        case ErrorCode::NegativeMass: return "NegativeMass";
        case ErrorCode::CoordinateOutOfRange: return "CoordinateOutOfRange";
        case ErrorCode::DuplicatePoint: return "DuplicatePoint";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::MartingaleViolation: return "MartingaleViolation";
        case ErrorCode::DegeneratePrior: return "DegeneratePrior";
        case ErrorCode::PriorOutOfRange: return "PriorOutOfRange";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::InfeasibleProblem: return "InfeasibleProblem";
        case ErrorCode::NotACertificate: return "NotACertificate";
        case ErrorCode::WrongArity: return "WrongArity";
        case ErrorCode::SubsetScanTooLarge: return "SubsetScanTooLarge";
        case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
        case ErrorCode::InvalidThresholds: return "InvalidThresholds";
        case ErrorCode::InvalidScheme: return "InvalidScheme";
        case ErrorCode::NotSymmetric: return "NotSymmetric";
        case ErrorCode::GridExcludesFeasibility: return "GridExcludesFeasibility";
        case ErrorCode::InvalidGrid: return "InvalidGrid";
        case ErrorCode::MissingObjectiveValue: return "MissingObjectiveValue";
        case ErrorCode::NotFeasible: return "NotFeasible";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

namespace {

std::string describe_means(const std::vector<Rational>& means) {
    std::ostringstream out;
    out << "agent means differ:";
    for (std::size_t i = 0; i < means.size(); ++i) out << " [" << i << "]=" << means[i];
    return out.str();
}

}  // namespace

MartingaleViolation::MartingaleViolation(std::vector<Rational> means)
    : Error(ErrorCode::MartingaleViolation, describe_means(means)), means_(std::move(means)) {}

}  // namespace bft
