#pragma once

#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace fuzzygeo {

// Longitude/latitude pair in decimal degrees.
struct GeoPoint {
  double lon = 0.0;
  double lat = 0.0;

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

// True when both coordinates are finite and inside [-180,180] x [-90,90].
bool is_valid(const GeoPoint& p) noexcept;

struct BoundingBox {
  double min_lon = 0.0;
  double min_lat = 0.0;
  double max_lon = 0.0;
  double max_lat = 0.0;

  double lon_extent() const noexcept { return max_lon - min_lon; }
  double lat_extent() const noexcept { return max_lat - min_lat; }
  bool contains(const GeoPoint& p) const noexcept {
    return p.lon >= min_lon && p.lon <= max_lon && p.lat >= min_lat && p.lat <= max_lat;
  }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

enum class RejectReason { TooFewVertices, SelfIntersecting, NonFinite };

std::string_view to_string(RejectReason reason);

/// A validated simple ring. Closure is implicit: the last vertex connects back
/// to the first and is never repeated. Instances only come out of
/// validate_polygon(), so every SimplePolygon satisfies the ring invariants.
class SimplePolygon {
 public:
  std::span<const GeoPoint> vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }

  friend bool operator==(const SimplePolygon&, const SimplePolygon&) = default;

 private:
  friend std::variant<SimplePolygon, RejectReason> validate_polygon(std::span<const GeoPoint> raw);
  explicit SimplePolygon(std::vector<GeoPoint> vertices) : vertices_(std::move(vertices)) {}

  std::vector<GeoPoint> vertices_;
};

/// Normalizes a raw ring and checks it. An explicit closing vertex is dropped
/// and consecutive duplicates are collapsed before the checks run. Coordinates
/// outside the valid lon/lat ranges are reported as NonFinite.
std::variant<SimplePolygon, RejectReason> validate_polygon(std::span<const GeoPoint> raw);

/// Great-circle distance on a sphere of radius kEarthRadiusKm.
double haversine_km(const GeoPoint& a, const GeoPoint& b) noexcept;

inline constexpr double kEarthRadiusKm = 6371.0;

/// Even-odd containment in the lon/lat plane. Points on an edge or vertex are
/// inside.
bool point_in_polygon(const GeoPoint& pt, const SimplePolygon& poly) noexcept;

/// True when pt lies exactly on one of the polygon's edges.
bool on_boundary(const GeoPoint& pt, const SimplePolygon& poly) noexcept;

BoundingBox bounding_box(const SimplePolygon& poly) noexcept;

// Closed-segment intersection test, collinear overlaps included.
bool segments_intersect(const GeoPoint& p1, const GeoPoint& p2, const GeoPoint& q1,
                        const GeoPoint& q2) noexcept;

}  // namespace fuzzygeo
