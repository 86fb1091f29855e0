#pragma once

#include <string>

#include "fuzzygeo/evaluation.hpp"

namespace fuzzygeo {

inline constexpr int kReportFormatVersion = 1;

// Versioned JSON documents. Output depends only on the report contents, so
// equal reports serialize to identical bytes.
std::string to_json(const GranularityStudyReport& report);
std::string to_json(const CrossValReport& report);
std::string to_json(const AntonymyReport& report);
std::string to_json(const MonotonicityReport& report);

// Plain-text tables for the console.
std::string format_table(const GranularityStudyReport& report);
std::string format_table(const CrossValReport& report);
std::string format_table(const AntonymyReport& report);
std::string format_table(const MonotonicityReport& report);

// Self-consistency checks; throw Error{InvariantViolation}.
void check_invariants(const GranularityStudyReport& report);
void check_invariants(const HitMatrix& matrix);
void check_invariants(const CrossValReport& report);
void check_invariants(const AntonymyReport& report);
void check_invariants(const MonotonicityReport& report);

}  // namespace fuzzygeo
