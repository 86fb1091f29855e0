#pragma once

#include <span>
#include <vector>

#include "fuzzygeo/dataset.hpp"
#include "fuzzygeo/geometry.hpp"

namespace fuzzygeo {

struct EvalParams;

/// Grid spacing as a percentage of the region bbox extent on each axis.
class GranularitySpec {
 public:
  /// Throws Error{InvalidArgument} unless 0 < percent <= 100.
  explicit GranularitySpec(double percent);

  double percent() const noexcept { return percent_; }

  friend bool operator==(const GranularitySpec&, const GranularitySpec&) = default;

 private:
  double percent_;
};

struct GridPoint {
  GeoPoint location;
  double md = 0.0;

  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

/// A built descriptor: region lattice points with normalized coverage counts.
/// Points are kept in ascending (lat, lon) order; the index of a point in
/// `points` is its canonical grid index.
struct FuzzyGrid {
  DescriptorLabel label;
  GranularitySpec granularity;
  BoundingBox bbox;
  std::vector<GridPoint> points;
  std::size_t response_count = 0;

  friend bool operator==(const FuzzyGrid&, const FuzzyGrid&) = default;
};

/// Orders lattice points by latitude, then longitude.
bool grid_order(const GeoPoint& a, const GeoPoint& b) noexcept;

/// Region lattice at the given granularity, bbox edges included, filtered by
/// boundary-inclusive containment in the region outline.
/// Throws Error{EmptyGrid} if no lattice point falls inside the region.
std::vector<GeoPoint> make_grid_points(const RegionBoundary& region, const GranularitySpec& granularity);

/// Number of polygons containing each point. Each entry is computed
/// independently of the others.
std::vector<std::size_t> coverage_counts(std::span<const GeoPoint> points,
                                         std::span<const SimplePolygon> polygons);

/// Normalizes coverage counts by their maximum.
/// Throws Error{NoCoverage} if every count is zero.
FuzzyGrid normalize_counts(const DescriptorLabel& label, const GranularitySpec& granularity,
                           const BoundingBox& bbox, std::span<const GeoPoint> points,
                           std::span<const std::size_t> counts, std::size_t response_count);

/// Builds the fuzzy grid of a descriptor from its response corpus.
FuzzyGrid build_fuzzy_grid(const RegionBoundary& region, const ResponseSet& responses,
                           const GranularitySpec& granularity);

/// Re-evaluates `source` at each target. The result is relabeled with the
/// target granularity and sorted in grid order.
/// Throws Error{InsufficientGrid} if source has fewer than four points.
FuzzyGrid interpolate_grid(const FuzzyGrid& source, std::span<const GeoPoint> targets,
                           const GranularitySpec& target_granularity, const EvalParams& params);

}  // namespace fuzzygeo
