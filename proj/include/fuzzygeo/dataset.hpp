#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fuzzygeo/geometry.hpp"

namespace fuzzygeo {

/// Name of a descriptor such as "north". Stored lowercased, so comparisons are
/// case-insensitive. Must be a single nonempty token without whitespace.
class DescriptorLabel {
 public:
  static DescriptorLabel parse(std::string_view text);

  const std::string& str() const noexcept { return id_; }

  friend auto operator<=>(const DescriptorLabel&, const DescriptorLabel&) = default;

 private:
  explicit DescriptorLabel(std::string id) : id_(std::move(id)) {}
  std::string id_;
};

/// The polygon interpretations collected for one descriptor.
struct ResponseSet {
  DescriptorLabel label;
  std::vector<SimplePolygon> polygons;
};

/// Outline of the underlying geography; clips every grid.
class RegionBoundary {
 public:
  explicit RegionBoundary(SimplePolygon shape) : shape_(std::move(shape)), bbox_(bounding_box(shape_)) {}

  const SimplePolygon& shape() const noexcept { return shape_; }
  const BoundingBox& bbox() const noexcept { return bbox_; }

 private:
  SimplePolygon shape_;
  BoundingBox bbox_;
};

struct Rejection {
  std::size_t index = 0;  // position in the document's feature array
  RejectReason reason = RejectReason::TooFewVertices;

  friend bool operator==(const Rejection&, const Rejection&) = default;
};

struct CleaningReport {
  std::size_t accepted_count = 0;
  std::vector<Rejection> rejected;
};

/// Parameters of a jittered half-plane survey emulator.
///
/// Respondent i draws the side of a dividing line placed at
/// `center_fraction + u_i * jitter_fraction` of the bbox extent, with u_i
/// uniform in [-1, 1). Latitude half-planes model north/south readings,
/// longitude half-planes east/west.
struct SynthModel {
  enum class Kind { LatitudeHalfplane, LongitudeHalfplane };
  enum class Side { High, Low };

  Kind kind = Kind::LatitudeHalfplane;
  double center_fraction = 0.5;
  double jitter_fraction = 0.15;
  Side side = Side::High;
  std::uint64_t seed = 0;
};

/// Parses a GeoJSON FeatureCollection, Feature or bare geometry and returns the
/// outer ring of its first polygon.
/// Throws Error{ParseError} or Error{InvalidGeometry}.
RegionBoundary load_region(std::string_view document);

/// Reads the Polygon features of `document` meant for `label`. Features with a
/// "descriptor" property naming another label are skipped; features without
/// the property are kept. Invalid rings are dropped and listed in the report.
/// Throws Error{ParseError} or Error{EmptyCorpus}.
std::pair<ResponseSet, CleaningReport> load_responses(std::string_view document,
                                                      const DescriptorLabel& label);

/// Deterministic synthetic corpus of n rectangles inside the region bbox.
/// Throws Error{InvalidArgument} if the model or n is out of range.
ResponseSet synth_responses(const RegionBoundary& region, const DescriptorLabel& label,
                            const SynthModel& model, std::size_t n);

// GeoJSON writers, readable back by the loaders above.
std::string to_geojson(const ResponseSet& responses);
std::string to_geojson(const RegionBoundary& region);

}  // namespace fuzzygeo
