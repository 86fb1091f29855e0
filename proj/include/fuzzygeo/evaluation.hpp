#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fuzzygeo/dataset.hpp"
#include "fuzzygeo/grid.hpp"
#include "fuzzygeo/membership.hpp"

namespace fuzzygeo {

// ---------------------------------------------------------------------------
// Granularity study
// ---------------------------------------------------------------------------

struct GranularityRow {
  double pct = 0.0;
  std::size_t point_count = 0;
  double build_seconds = 0.0;
  double reduction_factor = 0.0;  // baseline seconds / row seconds
  double point_ratio = 0.0;       // baseline points / row points
  double mean_abs_diff = 0.0;
  double std_abs_diff = 0.0;      // population standard deviation
};

struct GranularityStudyReport {
  double baseline_pct = 0.0;
  std::size_t baseline_point_count = 0;
  double baseline_seconds = 0.0;
  std::size_t timing_repeats = 1;
  std::vector<GranularityRow> rows;
};

/// Builds the baseline grid and one grid per entry of `others`, re-evaluates
/// each coarser grid at the baseline locations and summarizes |difference|.
///
/// build_seconds covers the coverage-counting phase only. With
/// timing_repeats > 1 the phase is rerun and the fastest run is kept.
/// Throws Error{InvalidArgument} if some entry of `others` is finer than the
/// baseline; build errors propagate.
GranularityStudyReport granularity_study(const RegionBoundary& region, const ResponseSet& responses,
                                         double baseline_pct, std::span<const double> others,
                                         const EvalParams& params = {}, std::size_t timing_repeats = 1);

// ---------------------------------------------------------------------------
// Cross-validation
// ---------------------------------------------------------------------------

/// fractions[w][t]: share of test points whose true label is labels[t] that
/// were won by labels[w]. Columns sum to one.
struct HitMatrix {
  std::vector<DescriptorLabel> labels;
  std::vector<std::vector<double>> fractions;

  double at(std::size_t winner, std::size_t truth) const { return fractions[winner][truth]; }
};

/// Metrics of one label. An empty optional marks a 0/0 denominator, or a
/// paper recall requested for other than two labels.
struct LabelMetrics {
  DescriptorLabel label;
  std::optional<double> precision;
  std::optional<double> paper_recall;
  std::optional<double> standard_recall;
};

struct PRMetrics {
  std::vector<LabelMetrics> per_label;
};

/// Precision is one-vs-rest with class weights applied to the columns.
/// Standard recall is the diagonal share of each column. Paper recall is the
/// two-label ratio TP(A) / (TP(A) + TP(B)); for other label counts it throws
/// Error{PaperRecallUndefined}, unless require_paper_recall is false, in which
/// case it is left empty.
PRMetrics precision_recall(const HitMatrix& matrix, std::span<const double> class_weights,
                           bool require_paper_recall = true);

struct CrossValConfig {
  std::size_t folds = 10;
  std::size_t samples_per_polygon = 30;
  double sample_grid_pct = 1.0;
  double model_grid_pct = 2.0;
  std::uint64_t seed = 0;
  EvalParams params;
};

struct CrossValReport {
  std::size_t folds = 0;
  double granularity_pct = 0.0;  // model grids
  double sample_granularity_pct = 0.0;
  std::size_t samples_per_polygon = 0;
  std::uint64_t seed = 0;
  std::vector<HitMatrix> per_fold;
  HitMatrix mean_matrix;
  PRMetrics metrics;
  std::size_t tie_count = 0;
  std::size_t sample_count = 0;
  std::size_t skipped_polygons = 0;  // held-out polygons without any sample candidate
};

/// Splits indices 0..n-1 into `folds` groups after a seeded shuffle. Group
/// sizes differ by at most one.
std::vector<std::vector<std::size_t>> assign_folds(std::size_t n, std::size_t folds, std::uint64_t seed);

/// K-fold evaluation of the descriptors against held-out responses.
///
/// For each fold, one grid per label is built from the other folds' polygons.
/// Every held-out polygon is probed with up to samples_per_polygon distinct
/// points drawn from the region lattice at sample_grid_pct inside it; each
/// probe is classified against all grids. Winner shares are averaged per
/// polygon, then per label within the fold, then across folds.
///
/// Throws Error{InvalidArgument}, Error{DuplicateLabel},
/// Error{InsufficientPolygons} or Error{NoTestPoints}; build errors propagate.
CrossValReport cross_validate(const RegionBoundary& region, std::span<const ResponseSet> response_sets,
                              const CrossValConfig& config);

// ---------------------------------------------------------------------------
// Antonymy and monotonicity
// ---------------------------------------------------------------------------

struct DiffPoint {
  GeoPoint location;
  double diff = 0.0;
};

struct AntonymyReport {
  double mean_abs_diff = 0.0;
  double max_abs_diff = 0.0;
  std::vector<DiffPoint> diff_points;
};

/// diff(p) = mu_b(p) - (1 - mu_a(p)) at every target.
/// Throws Error{InvalidArgument} on an empty target list.
AntonymyReport antonymy_check(const FuzzyGrid& grid_a, const FuzzyGrid& grid_b,
                              std::span<const GeoPoint> targets, const EvalParams& params = {});

enum class Axis { Lat, Lon };
enum class Direction { Increasing, Decreasing };

struct MonotonicityViolation {
  GeoPoint point_a;
  GeoPoint point_b;  // next point along the direction
  double md_a = 0.0;
  double md_b = 0.0;
};

struct MonotonicityReport {
  Axis axis = Axis::Lat;
  Direction direction = Direction::Increasing;
  std::size_t lines_checked = 0;
  std::vector<MonotonicityViolation> violations;
};

/// Walks every grid line parallel to `axis` in the given direction and
/// reports each adjacent pair where the degree drops.
MonotonicityReport monotonicity_check(const FuzzyGrid& grid, Axis axis, Direction direction);

}  // namespace fuzzygeo
