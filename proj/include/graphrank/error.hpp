#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace graphrank {

enum class ErrorCode {
  // graph-core
  DanglingEdge,
  LabelOutOfRange,
  EmptySplit,
  DegenerateGraph,
  ParseError,
  InconsistentDimensions,
  InvalidParameter,
  // nn-kernel / target-models
  ShapeMismatch,
  NonFinite,
  EmptyMask,
  InvalidRate,
  DivergedTraining,
  // attribute-bank
  NotADistribution,
  WrongSource,
  RowCountMismatch,
  SchemaMismatch,
  // gbdt-ranker
  EmptyValidation,
  InsufficientData,
  WidthMismatch,
  BudgetExceedsPool,
  // baseline-suite
  EmptySet,
  KExceedsLabeled,
  InvalidLambda,
  // eval-metrics
  TooFewFailures,
  EmptyGrid,
  EmptyGroup,
  ZeroVariance,
  DuplicateSelection,
  // cli
  ConfigError,
  StaleArtifacts,
  MissingArtifacts,
  UnknownMethod,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; `code()` identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Throws `Error(code, message)` unless `condition` holds.
inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) throw Error(code, message);
}

}  // namespace graphrank
