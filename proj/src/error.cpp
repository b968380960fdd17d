#include "graphrank/error.hpp"

namespace graphrank {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DanglingEdge: return "DanglingEdge";
    case ErrorCode::LabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::EmptySplit: return "EmptySplit";
    case ErrorCode::DegenerateGraph: return "DegenerateGraph";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InconsistentDimensions: return "InconsistentDimensions";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::InvalidRate: return "InvalidRate";
    case ErrorCode::DivergedTraining: return "DivergedTraining";
    case ErrorCode::NotADistribution: return "NotADistribution";
    case ErrorCode::WrongSource: return "WrongSource";
    case ErrorCode::RowCountMismatch: return "RowCountMismatch";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::EmptyValidation: return "EmptyValidation";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::WidthMismatch: return "WidthMismatch";
    case ErrorCode::BudgetExceedsPool: return "BudgetExceedsPool";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::KExceedsLabeled: return "KExceedsLabeled";
    case ErrorCode::InvalidLambda: return "InvalidLambda";
    case ErrorCode::TooFewFailures: return "TooFewFailures";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::EmptyGroup: return "EmptyGroup";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::DuplicateSelection: return "DuplicateSelection";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::StaleArtifacts: return "StaleArtifacts";
    case ErrorCode::MissingArtifacts: return "MissingArtifacts";
    case ErrorCode::UnknownMethod: return "UnknownMethod";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace graphrank
