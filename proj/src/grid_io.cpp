#include "fuzzygeo/grid_io.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

#include "fuzzygeo/error.hpp"

namespace fuzzygeo {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorKind::ParseError, "grid file: " + what);
}

double number_at(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number()) malformed(std::string("missing numeric '") + key + "'");
  return doc[key].get<double>();
}

// 17 significant digits always round-trip a double.
std::string exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string save_grid(const FuzzyGrid& grid) {
  std::string out = "{\"format_version\":" + std::to_string(kGridFormatVersion) +
                    ",\"descriptor\":" + json(grid.label.str()).dump() +
                    ",\"granularity_pct\":" + exact(grid.granularity.percent()) + ",\"bbox\":[" +
                    exact(grid.bbox.min_lon) + "," + exact(grid.bbox.min_lat) + "," +
                    exact(grid.bbox.max_lon) + "," + exact(grid.bbox.max_lat) +
                    "],\"response_count\":" + std::to_string(grid.response_count) + ",\"points\":[";
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    const auto& p = grid.points[i];
    out += (i == 0 ? "\n[" : ",\n[") + exact(p.location.lon) + "," + exact(p.location.lat) + "," +
           exact(p.md) + "]";
  }
  out += "\n]}\n";
  return out;
}

FuzzyGrid load_grid(std::string_view content) {
  json doc;
  try {
    doc = json::parse(content);
  } catch (const json::parse_error& e) {
    malformed(e.what());
  }
  if (!doc.is_object()) malformed("top level is not an object");
  if (!doc.contains("format_version") || !doc["format_version"].is_number_integer()) {
    malformed("missing integer 'format_version'");
  }
  if (const auto version = doc["format_version"].get<long long>(); version != kGridFormatVersion) {
    throw Error(ErrorKind::VersionMismatch,
                "grid format_version " + std::to_string(version) + " is not supported");
  }

  if (!doc.contains("descriptor") || !doc["descriptor"].is_string()) malformed("missing 'descriptor'");
  if (!doc.contains("response_count") || !doc["response_count"].is_number_unsigned()) {
    malformed("'response_count' must be a nonnegative integer");
  }
  const json& bbox = doc.value("bbox", json());
  if (!bbox.is_array() || bbox.size() != 4 ||
      !std::all_of(bbox.begin(), bbox.end(), [](const json& v) { return v.is_number(); })) {
    malformed("'bbox' must be [min_lon, min_lat, max_lon, max_lat]");
  }
  const json& points = doc.value("points", json());
  if (!points.is_array()) malformed("'points' must be an array");

  try {
    FuzzyGrid grid{DescriptorLabel::parse(doc["descriptor"].get<std::string>()),
                   GranularitySpec(number_at(doc, "granularity_pct")),
                   {bbox[0].get<double>(), bbox[1].get<double>(), bbox[2].get<double>(), bbox[3].get<double>()},
                   {},
                   doc["response_count"].get<std::size_t>()};
    if (!(grid.bbox.min_lon <= grid.bbox.max_lon && grid.bbox.min_lat <= grid.bbox.max_lat)) {
      malformed("'bbox' minimum exceeds maximum");
    }
    grid.points.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      const json& row = points[i];
      if (!row.is_array() || row.size() != 3 ||
          !std::all_of(row.begin(), row.end(), [](const json& v) { return v.is_number(); })) {
        malformed("point " + std::to_string(i) + " is not a [lon, lat, md] triple");
      }
      GridPoint p{{row[0].get<double>(), row[1].get<double>()}, row[2].get<double>()};
      if (!is_valid(p.location)) malformed("point " + std::to_string(i) + " has invalid coordinates");
      if (!(p.md >= 0.0 && p.md <= 1.0)) {
        malformed("point " + std::to_string(i) + " has membership " + exact(p.md) + " outside [0, 1]");
      }
      if (!grid.points.empty() && !grid_order(grid.points.back().location, p.location)) {
        malformed("point " + std::to_string(i) + " breaks ascending (lat, lon) order");
      }
      grid.points.push_back(p);
    }
    return grid;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidArgument) malformed(e.what());
    throw;
  }
}

std::string export_csv(const FuzzyGrid& grid) {
  std::string out = "lon,lat,md\n";
  for (const auto& p : grid.points) {
    out += exact(p.location.lon) + "," + exact(p.location.lat) + "," + exact(p.md) + "\n";
  }
  return out;
}

std::string export_geojson(const FuzzyGrid& grid) {
  ordered_json doc;
  doc["type"] = "FeatureCollection";
  auto& features = doc["features"] = ordered_json::array();
  for (const auto& p : grid.points) {
    ordered_json f;
    f["type"] = "Feature";
    f["geometry"] = {{"type", "Point"}, {"coordinates", {p.location.lon, p.location.lat}}};
    f["properties"] = {{"md", p.md}};
    features.push_back(std::move(f));
  }
  return doc.dump() + "\n";
}

}  // namespace fuzzygeo
