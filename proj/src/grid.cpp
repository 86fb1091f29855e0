#include "fuzzygeo/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fuzzygeo/error.hpp"
#include "fuzzygeo/membership.hpp"

namespace fuzzygeo {

namespace {

// Lattice coordinate for step i. Computing the fraction as (i * percent) / 100
// keeps coarse and fine lattices bit-identical where they coincide.
double lattice_coordinate(double min, double max, std::size_t i, std::size_t steps, double percent,
                          bool snaps_to_max) {
  if (i == steps && snaps_to_max) return max;
  return min + (static_cast<double>(i) * percent / 100.0) * (max - min);
}

}  // namespace

GranularitySpec::GranularitySpec(double percent) : percent_(percent) {
  if (!(percent > 0.0 && percent <= 100.0)) {
    throw Error(ErrorKind::InvalidArgument,
                "granularity must be in (0, 100], got " + std::to_string(percent));
  }
}

bool grid_order(const GeoPoint& a, const GeoPoint& b) noexcept {
  return a.lat < b.lat || (a.lat == b.lat && a.lon < b.lon);
}

std::vector<GeoPoint> make_grid_points(const RegionBoundary& region, const GranularitySpec& granularity) {
  const double percent = granularity.percent();
  const auto steps = static_cast<std::size_t>(std::floor(100.0 / percent + 1e-9));
  // When percent divides 100 the last step lands on the far bbox edge.
  const bool snaps = std::fabs(static_cast<double>(steps) * percent - 100.0) <= 1e-9 * 100.0;
  const BoundingBox& box = region.bbox();

  std::vector<GeoPoint> points;
  for (std::size_t j = 0; j <= steps; ++j) {
    const double lat = lattice_coordinate(box.min_lat, box.max_lat, j, steps, percent, snaps);
    for (std::size_t i = 0; i <= steps; ++i) {
      const GeoPoint p{lattice_coordinate(box.min_lon, box.max_lon, i, steps, percent, snaps), lat};
      if (point_in_polygon(p, region.shape())) points.push_back(p);
    }
  }
  if (points.empty()) {
    throw Error(ErrorKind::EmptyGrid, "no lattice point at " + std::to_string(percent) +
                                          "% lies inside the region");
  }
  std::stable_sort(points.begin(), points.end(), grid_order);
  return points;
}

std::vector<std::size_t> coverage_counts(std::span<const GeoPoint> points,
                                         std::span<const SimplePolygon> polygons) {
  std::vector<std::size_t> counts(points.size(), 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (const auto& poly : polygons) {
      if (point_in_polygon(points[i], poly)) ++counts[i];
    }
  }
  return counts;
}

FuzzyGrid normalize_counts(const DescriptorLabel& label, const GranularitySpec& granularity,
                           const BoundingBox& bbox, std::span<const GeoPoint> points,
                           std::span<const std::size_t> counts, std::size_t response_count) {
  const std::size_t max_count = counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
  if (max_count == 0) {
    throw Error(ErrorKind::NoCoverage,
                "no grid point is covered by any response for '" + label.str() + "'");
  }
  FuzzyGrid grid{label, granularity, bbox, {}, response_count};
  grid.points.reserve(points.size());
  const auto max_md = static_cast<double>(max_count);
  for (std::size_t i = 0; i < points.size(); ++i) {
    grid.points.push_back({points[i], static_cast<double>(counts[i]) / max_md});
  }
  return grid;
}

FuzzyGrid build_fuzzy_grid(const RegionBoundary& region, const ResponseSet& responses,
                           const GranularitySpec& granularity) {
  const auto points = make_grid_points(region, granularity);
  const auto counts = coverage_counts(points, responses.polygons);
  return normalize_counts(responses.label, granularity, region.bbox(), points, counts,
                          responses.polygons.size());
}

FuzzyGrid interpolate_grid(const FuzzyGrid& source, std::span<const GeoPoint> targets,
                           const GranularitySpec& target_granularity, const EvalParams& params) {
  require_evaluable(source);
  FuzzyGrid out{source.label, target_granularity, source.bbox, {}, source.response_count};
  out.points.reserve(targets.size());
  for (const auto& p : targets) out.points.push_back({p, evaluate(source, p, params)});
  std::stable_sort(out.points.begin(), out.points.end(),
                   [](const GridPoint& a, const GridPoint& b) { return grid_order(a.location, b.location); });
  return out;
}

}  // namespace fuzzygeo
