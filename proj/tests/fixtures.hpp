#pragma once

#include <fstream>
#include <functional>
#include <optional>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fuzzygeo/dataset.hpp"
#include "fuzzygeo/error.hpp"
#include "fuzzygeo/geometry.hpp"
#include "fuzzygeo/grid.hpp"

namespace fuzzygeo::testing {

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data_path(const std::string& name) { return std::string(FUZZYGEO_DATA_DIR) + "/" + name; }

inline RegionBoundary coastal_region() { return load_region(read_text(data_path("region.geojson"))); }

inline SimplePolygon polygon(std::initializer_list<GeoPoint> pts) {
  std::vector<GeoPoint> v(pts);
  auto r = validate_polygon(v);
  if (!std::holds_alternative<SimplePolygon>(r)) throw std::runtime_error("fixture polygon is invalid");
  return std::get<SimplePolygon>(std::move(r));
}

inline SimplePolygon rect(double x0, double y0, double x1, double y1) {
  return polygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

inline RegionBoundary unit_square() { return RegionBoundary(rect(0, 0, 1, 1)); }

// Kind of the fuzzygeo::Error thrown by f, or nullopt if it returns normally.
inline std::optional<ErrorKind> kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

inline DescriptorLabel label(const char* s) { return DescriptorLabel::parse(s); }

// Corpora shared by the acceptance suite, the CLI pipeline and unit tests.
inline SynthModel north_model(std::uint64_t seed = 11) {
  return {SynthModel::Kind::LatitudeHalfplane, 0.6, 0.15, SynthModel::Side::High, seed};
}
inline SynthModel south_model(std::uint64_t seed = 11) {
  return {SynthModel::Kind::LatitudeHalfplane, 0.4, 0.15, SynthModel::Side::Low, seed};
}

}  // namespace fuzzygeo::testing
