#include "fuzzygeo/error.hpp"

namespace fuzzygeo {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidGeometry: return "InvalidGeometry";
    case ErrorKind::EmptyCorpus: return "EmptyCorpus";
    case ErrorKind::VersionMismatch: return "VersionMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::EmptyGrid: return "EmptyGrid";
    case ErrorKind::NoCoverage: return "NoCoverage";
    case ErrorKind::InsufficientGrid: return "InsufficientGrid";
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::InsufficientPolygons: return "InsufficientPolygons";
    case ErrorKind::NoTestPoints: return "NoTestPoints";
    case ErrorKind::PaperRecallUndefined: return "PaperRecallUndefined";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

}  // namespace fuzzygeo
