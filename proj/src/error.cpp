#include "minteval/error.hpp"

namespace minteval {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::IoError: return "IoError";
    case Errc::MalformedRow: return "MalformedRow";
    case Errc::UnknownMetric: return "UnknownMetric";
    case Errc::DuplicateKey: return "DuplicateKey";
    case Errc::InsufficientOverlap: return "InsufficientOverlap";
    case Errc::EmptyReference: return "EmptyReference";
    case Errc::EmptyCorpus: return "EmptyCorpus";
    case Errc::EmptyPool: return "EmptyPool";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::TooFewRows: return "TooFewRows";
    case Errc::NonFiniteInput: return "NonFiniteInput";
    case Errc::MissingScores: return "MissingScores";
    case Errc::LeakageError: return "LeakageError";
    case Errc::MissingHuman: return "MissingHuman";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::TooFewSegments: return "TooFewSegments";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::EmptySet: return "EmptySet";
    case Errc::MissingCell: return "MissingCell";
    case Errc::NoValidSources: return "NoValidSources";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::EmptyReport: return "EmptyReport";
  }
  return "UnknownError";
}

bool errc_is_data_error(Errc c) {
  switch (c) {
    case Errc::IoError:
    case Errc::MalformedRow:
    case Errc::UnknownMetric:
    case Errc::DuplicateKey:
    case Errc::InsufficientOverlap:
    case Errc::MissingScores:
    case Errc::MissingHuman:
    case Errc::MissingCell:
    case Errc::NoValidSources:
    case Errc::EmptySet:
    case Errc::EmptyCorpus:
    case Errc::EmptyReport:
      return true;
    default:
      return false;
  }
}

}  // namespace minteval
