#pragma once

#include <stdexcept>
#include <string>

namespace minteval {

// Error identities used across the library. Each value corresponds to a
// documented failure mode of some operation.
enum class Errc {
  // ingestion / data model
  IoError,
  MalformedRow,
  UnknownMetric,
  DuplicateKey,
  InsufficientOverlap,
  // lexical metrics
  EmptyReference,
  EmptyCorpus,
  // mbr
  EmptyPool,
  DimensionMismatch,
  // generic argument checks
  InvalidArgument,
  // forest
  TooFewRows,
  NonFiniteInput,
  // adjust
  MissingScores,
  LeakageError,
  MissingHuman,
  // meta-evaluation
  LengthMismatch,
  TooFewSegments,
  ShapeMismatch,
  EmptySet,
  MissingCell,
  NoValidSources,
  // synthetic scenarios
  InvalidConfig,
  // reporting
  EmptyReport,
};

const char* errc_name(Errc c);

// Data errors come from file contents or score tables (CLI exit code 2);
// everything else is a caller contract violation (CLI exit code 1).
bool errc_is_data_error(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace minteval
