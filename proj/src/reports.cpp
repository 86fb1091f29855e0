#include "fuzzygeo/reports.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "fuzzygeo/error.hpp"

namespace fuzzygeo {

using nlohmann::ordered_json;

namespace {

ordered_json number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json number(const std::optional<double>& v) { return v ? number(*v) : ordered_json(nullptr); }

ordered_json point(const GeoPoint& p) { return ordered_json::array({p.lon, p.lat}); }

ordered_json header(const char* kind) {
  ordered_json doc;
  doc["format_version"] = kReportFormatVersion;
  doc["report"] = kind;
  return doc;
}

ordered_json matrix_json(const HitMatrix& m) {
  ordered_json out;
  out["labels"] = ordered_json::array();
  for (const auto& l : m.labels) out["labels"].push_back(l.str());
  out["fractions"] = m.fractions;
  return out;
}

std::string fixed(double v, int digits = 3) {
  if (!std::isfinite(v)) return "-";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string fixed(const std::optional<double>& v) { return v ? fixed(*v) : "undef"; }

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

std::string pct_label(double pct) {
  std::ostringstream os;
  os << pct << "%";
  return os.str();
}

[[noreturn]] void violated(const std::string& what) { throw Error(ErrorKind::InvariantViolation, what); }

const char* axis_name(Axis a) { return a == Axis::Lat ? "lat" : "lon"; }
const char* direction_name(Direction d) { return d == Direction::Increasing ? "increasing" : "decreasing"; }

}  // namespace

std::string to_json(const GranularityStudyReport& report) {
  auto doc = header("granularity_study");
  doc["baseline_pct"] = report.baseline_pct;
  doc["baseline_point_count"] = report.baseline_point_count;
  doc["baseline_seconds"] = number(report.baseline_seconds);
  doc["timing_repeats"] = report.timing_repeats;
  doc["rows"] = ordered_json::array();
  for (const auto& r : report.rows) {
    ordered_json row;
    row["pct"] = r.pct;
    row["point_count"] = r.point_count;
    row["build_seconds"] = number(r.build_seconds);
    row["reduction_factor"] = number(r.reduction_factor);
    row["point_ratio"] = number(r.point_ratio);
    row["mean_abs_diff"] = number(r.mean_abs_diff);
    row["std_abs_diff"] = number(r.std_abs_diff);
    doc["rows"].push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

std::string to_json(const CrossValReport& report) {
  auto doc = header("cross_validation");
  doc["folds"] = report.folds;
  doc["granularity_pct"] = report.granularity_pct;
  doc["sample_granularity_pct"] = report.sample_granularity_pct;
  doc["samples_per_polygon"] = report.samples_per_polygon;
  doc["seed"] = report.seed;
  doc["sample_count"] = report.sample_count;
  doc["tie_count"] = report.tie_count;
  doc["skipped_polygons"] = report.skipped_polygons;
  doc["mean_matrix"] = matrix_json(report.mean_matrix);
  doc["metrics"] = ordered_json::array();
  for (const auto& m : report.metrics.per_label) {
    ordered_json row;
    row["label"] = m.label.str();
    row["precision"] = number(m.precision);
    row["paper_recall"] = number(m.paper_recall);
    row["standard_recall"] = number(m.standard_recall);
    doc["metrics"].push_back(std::move(row));
  }
  doc["per_fold"] = ordered_json::array();
  for (const auto& m : report.per_fold) doc["per_fold"].push_back(matrix_json(m));
  return doc.dump(2) + "\n";
}

std::string to_json(const AntonymyReport& report) {
  auto doc = header("antonymy");
  doc["mean_abs_diff"] = report.mean_abs_diff;
  doc["max_abs_diff"] = report.max_abs_diff;
  doc["diff_points"] = ordered_json::array();
  for (const auto& d : report.diff_points) {
    doc["diff_points"].push_back({d.location.lon, d.location.lat, d.diff});
  }
  return doc.dump(1) + "\n";
}

std::string to_json(const MonotonicityReport& report) {
  auto doc = header("monotonicity");
  doc["axis"] = axis_name(report.axis);
  doc["direction"] = direction_name(report.direction);
  doc["lines_checked"] = report.lines_checked;
  doc["violations"] = ordered_json::array();
  for (const auto& v : report.violations) {
    ordered_json row;
    row["point_a"] = point(v.point_a);
    row["point_b"] = point(v.point_b);
    row["md_a"] = v.md_a;
    row["md_b"] = v.md_b;
    doc["violations"].push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

std::string format_table(const GranularityStudyReport& report) {
  std::ostringstream os;
  const std::string base = pct_label(report.baseline_pct);
  os << pad("Grid granularity", 22) << pad("Points", 9) << pad("Time (sec.)", 13) << pad("Reduction", 11)
     << pad("Pt. ratio", 11) << pad("Avg. diff.", 12) << "Std. diff.\n";
  os << pad(base + " baseline grid", 22) << pad(std::to_string(report.baseline_point_count), 9)
     << pad(fixed(report.baseline_seconds, 4), 13) << pad("-", 11) << pad("-", 11) << pad("-", 12) << "-\n";
  for (const auto& r : report.rows) {
    os << pad(pct_label(r.pct) + " (int. to " + base + ")", 22) << pad(std::to_string(r.point_count), 9)
       << pad(fixed(r.build_seconds, 4), 13) << pad(fixed(r.reduction_factor, 1) + "x", 11)
       << pad(fixed(r.point_ratio, 1) + "x", 11) << pad(fixed(r.mean_abs_diff), 12) << fixed(r.std_abs_diff)
       << "\n";
  }
  return os.str();
}

std::string format_table(const CrossValReport& report) {
  std::ostringstream os;
  const auto& m = report.mean_matrix;
  os << "Winners against actual references (" << report.folds << "-fold mean)\n";
  os << pad("", 20);
  for (const auto& l : m.labels) os << pad(l.str(), 10);
  os << "\n";
  for (std::size_t w = 0; w < m.labels.size(); ++w) {
    os << pad("% Hits mu_" + m.labels[w].str(), 20);
    for (std::size_t t = 0; t < m.labels.size(); ++t) os << pad(fixed(m.at(w, t)), 10);
    os << "\n";
  }
  os << "\n" << pad("", 20) << pad("Precision", 11) << pad("Recall", 9) << "Std. recall\n";
  for (const auto& lm : report.metrics.per_label) {
    os << pad("mu_" + lm.label.str(), 20) << pad(fixed(lm.precision), 11) << pad(fixed(lm.paper_recall), 9)
       << fixed(lm.standard_recall) << "\n";
  }
  os << "\nsamples " << report.sample_count << ", ties " << report.tie_count << ", skipped polygons "
     << report.skipped_polygons << "\n";
  return os.str();
}

std::string format_table(const AntonymyReport& report) {
  std::ostringstream os;
  os << "points " << report.diff_points.size() << ", mean |diff| " << fixed(report.mean_abs_diff, 6)
     << ", max |diff| " << fixed(report.max_abs_diff, 6) << "\n";
  return os.str();
}

std::string format_table(const MonotonicityReport& report) {
  std::ostringstream os;
  os << "axis " << axis_name(report.axis) << " " << direction_name(report.direction) << ": "
     << report.lines_checked << " lines, " << report.violations.size() << " violations\n";
  for (const auto& v : report.violations) {
    os << "  (" << v.point_a.lon << ", " << v.point_a.lat << ") md " << fixed(v.md_a) << " > (" << v.point_b.lon
       << ", " << v.point_b.lat << ") md " << fixed(v.md_b) << "\n";
  }
  return os.str();
}

void check_invariants(const GranularityStudyReport& report) {
  for (const auto& r : report.rows) {
    if (!(r.mean_abs_diff >= 0.0 && r.mean_abs_diff <= 1.0 && r.std_abs_diff >= 0.0 && r.std_abs_diff <= 1.0)) {
      violated("granularity row " + pct_label(r.pct) + " has a difference outside [0, 1]");
    }
    if (r.build_seconds > 0.0 && std::fabs(r.reduction_factor - report.baseline_seconds / r.build_seconds) >
                                     1e-12 * std::fabs(r.reduction_factor)) {
      violated("granularity row " + pct_label(r.pct) + " reduction factor does not match its timings");
    }
  }
}

void check_invariants(const HitMatrix& matrix) {
  const std::size_t k = matrix.labels.size();
  for (std::size_t t = 0; t < k; ++t) {
    double column = 0.0;
    for (std::size_t w = 0; w < k; ++w) {
      const double v = matrix.at(w, t);
      if (!(v >= 0.0 && v <= 1.0)) violated("hit matrix entry outside [0, 1]");
      column += v;
    }
    if (std::fabs(column - 1.0) > 1e-9) violated("hit matrix column '" + matrix.labels[t].str() + "' does not sum to 1");
  }
}

void check_invariants(const CrossValReport& report) {
  if (report.per_fold.size() != report.folds) violated("cross-validation report is missing folds");
  for (const auto& m : report.per_fold) check_invariants(m);
  check_invariants(report.mean_matrix);
  const std::size_t k = report.mean_matrix.labels.size();
  for (std::size_t w = 0; w < k; ++w) {
    for (std::size_t t = 0; t < k; ++t) {
      double sum = 0.0;
      for (const auto& m : report.per_fold) sum += m.at(w, t);
      if (std::fabs(sum / static_cast<double>(report.folds) - report.mean_matrix.at(w, t)) > 1e-12) {
        violated("mean hit matrix is not the mean of the folds");
      }
    }
  }
  for (const auto& m : report.metrics.per_label) {
    for (const auto& v : {m.precision, m.paper_recall, m.standard_recall}) {
      if (v && !(*v >= 0.0 && *v <= 1.0)) violated("metric outside [0, 1] for '" + m.label.str() + "'");
    }
  }
}

void check_invariants(const AntonymyReport& report) {
  double sum = 0.0;
  double max = 0.0;
  for (const auto& d : report.diff_points) {
    if (!(d.diff >= -1.0 && d.diff <= 1.0)) violated("antonymy difference outside [-1, 1]");
    sum += std::fabs(d.diff);
    max = std::max(max, std::fabs(d.diff));
  }
  const double mean = report.diff_points.empty() ? 0.0 : sum / static_cast<double>(report.diff_points.size());
  if (std::fabs(mean - report.mean_abs_diff) > 1e-12 || max != report.max_abs_diff) {
    violated("antonymy summary does not match its points");
  }
}

void check_invariants(const MonotonicityReport& report) {
  for (const auto& v : report.violations) {
    if (!(v.md_a > v.md_b)) violated("monotonicity violation without a decrease");
    const bool along_lat = report.axis == Axis::Lat;
    if ((along_lat ? v.point_a.lon != v.point_b.lon : v.point_a.lat != v.point_b.lat)) {
      violated("monotonicity violation spans two grid lines");
    }
  }
}

}  // namespace fuzzygeo
