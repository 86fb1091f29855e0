#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fuzzygeo {

enum class ErrorKind {
  IoError,
  ParseError,
  InvalidGeometry,
  EmptyCorpus,
  VersionMismatch,
  InvalidArgument,
  EmptyGrid,
  NoCoverage,
  InsufficientGrid,
  DuplicateLabel,
  InsufficientPolygons,
  NoTestPoints,
  PaperRecallUndefined,
  InvariantViolation,
};

std::string_view to_string(ErrorKind kind);

// Every library failure is reported through this type. what() always starts
// with the kind name, so diagnostics can be grepped for "EmptyCorpus" etc.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fuzzygeo
