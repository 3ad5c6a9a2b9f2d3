#pragma once

#include <stdexcept>

namespace semdist {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad command line or configuration. CLI exit code 1.
struct UsageError : Error {
  using Error::Error;
};

// Problems with input data, vocabularies or model files. CLI exit code 2.
struct DataError : Error {
  using Error::Error;
};

// Numerical failures that indicate a bug or an ill-conditioned input.
// CLI exit code 3.
struct NumericError : Error {
  using Error::Error;
};

struct EmptyCorpus : DataError {
  using DataError::DataError;
};
struct EmptyDocument : DataError {
  using DataError::DataError;
};
struct DimensionMismatch : DataError {
  using DataError::DataError;
};
struct UnknownWord : DataError {
  using DataError::DataError;
};
struct VocabMismatch : DataError {
  using DataError::DataError;
};
struct EmptyTrainingSet : DataError {
  using DataError::DataError;
};
struct DegenerateClass : DataError {
  using DataError::DataError;
};
struct InsufficientClassData : DataError {
  using DataError::DataError;
};
struct ModelFormatError : DataError {
  using DataError::DataError;
};

struct EigenFailure : NumericError {
  using NumericError::NumericError;
};
struct NegativeEntry : NumericError {
  using NumericError::NumericError;
};
struct ZeroRow : NumericError {
  using NumericError::NumericError;
};
struct NegativeResidual : NumericError {
  using NumericError::NumericError;
};

}  // namespace semdist
