#include "fuzzygeo/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <json.hpp>

#include "fuzzygeo/error.hpp"
#include "fuzzygeo/random.hpp"

namespace fuzzygeo {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json parse_document(std::string_view document) {
  try {
    return json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed JSON: ") + e.what());
  }
}

std::vector<GeoPoint> parse_ring(const json& ring) {
  if (!ring.is_array()) throw Error(ErrorKind::ParseError, "ring is not an array");
  std::vector<GeoPoint> points;
  points.reserve(ring.size());
  for (const auto& pos : ring) {
    if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number()) {
      throw Error(ErrorKind::ParseError, "position must be an array [lon, lat, ...]");
    }
    points.push_back({pos[0].get<double>(), pos[1].get<double>()});
  }
  return points;
}

// Outer ring of a Polygon, or of the first member of a MultiPolygon.
std::vector<GeoPoint> outer_ring(const json& geometry) {
  if (!geometry.is_object() || !geometry.contains("type") || !geometry["type"].is_string()) {
    throw Error(ErrorKind::ParseError, "geometry object without a type");
  }
  const auto type = geometry["type"].get<std::string>();
  if (!geometry.contains("coordinates") || !geometry["coordinates"].is_array()) {
    throw Error(ErrorKind::ParseError, type + " geometry without coordinates");
  }
  const json& coords = geometry["coordinates"];
  if (type == "Polygon") {
    if (coords.empty()) throw Error(ErrorKind::ParseError, "Polygon without rings");
    return parse_ring(coords[0]);
  }
  if (type == "MultiPolygon") {
    if (coords.empty() || !coords[0].is_array() || coords[0].empty()) {
      throw Error(ErrorKind::ParseError, "MultiPolygon without rings");
    }
    return parse_ring(coords[0][0]);
  }
  throw Error(ErrorKind::ParseError, "expected a Polygon geometry, found " + type);
}

const json& feature_geometry(const json& feature) {
  if (!feature.is_object() || !feature.contains("geometry")) {
    throw Error(ErrorKind::ParseError, "feature without geometry");
  }
  return feature["geometry"];
}

std::string lowercase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

ordered_json ring_json(std::span<const GeoPoint> vertices) {
  ordered_json ring = ordered_json::array();
  for (const auto& p : vertices) ring.push_back({p.lon, p.lat});
  ring.push_back({vertices.front().lon, vertices.front().lat});
  return ring;
}

ordered_json polygon_feature(const SimplePolygon& poly) {
  ordered_json feature;
  feature["type"] = "Feature";
  feature["properties"] = ordered_json::object();
  feature["geometry"] = {{"type", "Polygon"},
                         {"coordinates", ordered_json::array({ring_json(poly.vertices())})}};
  return feature;
}

}  // namespace

DescriptorLabel DescriptorLabel::parse(std::string_view text) {
  if (text.empty()) throw Error(ErrorKind::InvalidArgument, "descriptor label is empty");
  for (unsigned char c : text) {
    if (std::isspace(c) || std::iscntrl(c)) {
      throw Error(ErrorKind::InvalidArgument,
                  "descriptor label '" + std::string(text) + "' is not a single token");
    }
  }
  return DescriptorLabel(lowercase(text));
}

RegionBoundary load_region(std::string_view document) {
  const json doc = parse_document(document);
  if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string()) {
    throw Error(ErrorKind::ParseError, "region document is not a GeoJSON object");
  }
  const auto type = doc["type"].get<std::string>();
  std::vector<GeoPoint> ring;
  if (type == "FeatureCollection") {
    if (!doc.contains("features") || !doc["features"].is_array() || doc["features"].empty()) {
      throw Error(ErrorKind::ParseError, "region feature collection has no features");
    }
    ring = outer_ring(feature_geometry(doc["features"][0]));
  } else if (type == "Feature") {
    ring = outer_ring(feature_geometry(doc));
  } else {
    ring = outer_ring(doc);
  }

  auto validated = validate_polygon(ring);
  if (const auto* reason = std::get_if<RejectReason>(&validated)) {
    throw Error(ErrorKind::InvalidGeometry, "region outline rejected (" +
                                                std::string(to_string(*reason)) + ")");
  }
  return RegionBoundary(std::get<SimplePolygon>(std::move(validated)));
}

std::pair<ResponseSet, CleaningReport> load_responses(std::string_view document,
                                                      const DescriptorLabel& label) {
  const json doc = parse_document(document);
  if (!doc.is_object() || doc.value("type", json()) != "FeatureCollection" ||
      !doc.contains("features") || !doc["features"].is_array()) {
    throw Error(ErrorKind::ParseError, "responses document is not a GeoJSON FeatureCollection");
  }

  ResponseSet responses{label, {}};
  CleaningReport report;
  const json& features = doc["features"];
  for (std::size_t i = 0; i < features.size(); ++i) {
    const json& feature = features[i];
    const json& geometry = feature_geometry(feature);
    if (feature.contains("properties") && feature["properties"].is_object() &&
        feature["properties"].contains("descriptor")) {
      const json& tag = feature["properties"]["descriptor"];
      if (!tag.is_string()) {
        throw Error(ErrorKind::ParseError,
                    "feature " + std::to_string(i) + ": descriptor property is not a string");
      }
      if (lowercase(tag.get<std::string>()) != label.str()) continue;
    }
    if (!geometry.is_object() || geometry.value("type", json()) != "Polygon") {
      throw Error(ErrorKind::ParseError, "feature " + std::to_string(i) + " is not a Polygon");
    }
    auto validated = validate_polygon(outer_ring(geometry));
    if (auto* poly = std::get_if<SimplePolygon>(&validated)) {
      responses.polygons.push_back(std::move(*poly));
      ++report.accepted_count;
    } else {
      report.rejected.push_back({i, std::get<RejectReason>(validated)});
    }
  }

  if (responses.polygons.empty()) {
    throw Error(ErrorKind::EmptyCorpus, "no valid polygons for descriptor '" + label.str() + "'");
  }
  return {std::move(responses), std::move(report)};
}

ResponseSet synth_responses(const RegionBoundary& region, const DescriptorLabel& label,
                            const SynthModel& model, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "synthetic corpus size must be positive");
  const double lo = model.center_fraction - model.jitter_fraction;
  const double hi = model.center_fraction + model.jitter_fraction;
  if (!(model.jitter_fraction >= 0.0 && model.jitter_fraction < 0.5) || !(lo > 0.0) ||
      !(hi < 1.0)) {
    throw Error(ErrorKind::InvalidArgument,
                "center_fraction +/- jitter_fraction must stay inside (0, 1)");
  }

  const BoundingBox& box = region.bbox();
  const bool along_lat = model.kind == SynthModel::Kind::LatitudeHalfplane;
  const double start = along_lat ? box.min_lat : box.min_lon;
  const double extent = along_lat ? box.lat_extent() : box.lon_extent();

  Rng rng(model.seed);
  ResponseSet out{label, {}};
  out.polygons.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = -1.0 + 2.0 * rng.uniform01();
    const double cut = start + (model.center_fraction + u * model.jitter_fraction) * extent;
    BoundingBox rect = box;
    if (along_lat) {
      (model.side == SynthModel::Side::High ? rect.min_lat : rect.max_lat) = cut;
    } else {
      (model.side == SynthModel::Side::High ? rect.min_lon : rect.max_lon) = cut;
    }
    const GeoPoint ring[] = {{rect.min_lon, rect.min_lat},
                             {rect.max_lon, rect.min_lat},
                             {rect.max_lon, rect.max_lat},
                             {rect.min_lon, rect.max_lat}};
    auto validated = validate_polygon(ring);
    if (!std::holds_alternative<SimplePolygon>(validated)) {
      throw Error(ErrorKind::InvalidArgument, "region bbox is degenerate");
    }
    out.polygons.push_back(std::get<SimplePolygon>(std::move(validated)));
  }
  return out;
}

std::string to_geojson(const ResponseSet& responses) {
  ordered_json doc;
  doc["type"] = "FeatureCollection";
  doc["features"] = ordered_json::array();
  for (const auto& poly : responses.polygons) {
    auto feature = polygon_feature(poly);
    feature["properties"]["descriptor"] = responses.label.str();
    doc["features"].push_back(std::move(feature));
  }
  return doc.dump(1) + "\n";
}

std::string to_geojson(const RegionBoundary& region) {
  ordered_json doc;
  doc["type"] = "FeatureCollection";
  doc["features"] = ordered_json::array({polygon_feature(region.shape())});
  return doc.dump(1) + "\n";
}

}  // namespace fuzzygeo
