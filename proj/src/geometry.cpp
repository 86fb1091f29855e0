#include "fuzzygeo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fuzzygeo {

namespace {

// Twice the signed area of (a, b, c); positive when c is left of a->b.
double cross(const GeoPoint& a, const GeoPoint& b, const GeoPoint& c) noexcept {
  return (b.lon - a.lon) * (c.lat - a.lat) - (b.lat - a.lat) * (c.lon - a.lon);
}

int sign(double v) noexcept { return (v > 0.0) - (v < 0.0); }

// c is known to be collinear with a-b; check it lies within the segment's box.
bool within_segment_box(const GeoPoint& a, const GeoPoint& b, const GeoPoint& c) noexcept {
  return std::min(a.lon, b.lon) <= c.lon && c.lon <= std::max(a.lon, b.lon) &&
         std::min(a.lat, b.lat) <= c.lat && c.lat <= std::max(a.lat, b.lat);
}

bool on_segment(const GeoPoint& a, const GeoPoint& b, const GeoPoint& p) noexcept {
  return cross(a, b, p) == 0.0 && within_segment_box(a, b, p);
}

double radians(double deg) noexcept { return deg * std::numbers::pi / 180.0; }

bool is_simple_ring(const std::vector<GeoPoint>& v) {
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const GeoPoint& a = v[i];
    const GeoPoint& b = v[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const GeoPoint& c = v[j];
      const GeoPoint& d = v[(j + 1) % n];
      const bool next = (j == i + 1);
      const bool wrap = (i == 0 && j == n - 1);
      if (!next && !wrap) {
        if (segments_intersect(a, b, c, d)) return false;
        continue;
      }
      // Adjacent edges share exactly one vertex; they may only meet there.
      // A collinear fold back along the previous edge is an overlap.
      const GeoPoint& shared = next ? b : a;
      const GeoPoint& p = next ? a : b;
      const GeoPoint& q = next ? d : c;
      if (cross(p, shared, q) == 0.0) {
        const double dot = (p.lon - shared.lon) * (q.lon - shared.lon) +
                           (p.lat - shared.lat) * (q.lat - shared.lat);
        if (dot > 0.0) return false;
      }
    }
  }
  return true;
}

}  // namespace

bool is_valid(const GeoPoint& p) noexcept {
  return std::isfinite(p.lon) && std::isfinite(p.lat) && p.lon >= -180.0 && p.lon <= 180.0 &&
         p.lat >= -90.0 && p.lat <= 90.0;
}

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::TooFewVertices:
      return "TooFewVertices";
    case RejectReason::SelfIntersecting:
      return "SelfIntersecting";
    case RejectReason::NonFinite:
      return "NonFinite";
  }
  return "Unknown";
}

bool segments_intersect(const GeoPoint& p1, const GeoPoint& p2, const GeoPoint& q1,
                        const GeoPoint& q2) noexcept {
  const int d1 = sign(cross(q1, q2, p1));
  const int d2 = sign(cross(q1, q2, p2));
  const int d3 = sign(cross(p1, p2, q1));
  const int d4 = sign(cross(p1, p2, q2));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && within_segment_box(q1, q2, p1)) return true;
  if (d2 == 0 && within_segment_box(q1, q2, p2)) return true;
  if (d3 == 0 && within_segment_box(p1, p2, q1)) return true;
  if (d4 == 0 && within_segment_box(p1, p2, q2)) return true;
  return false;
}

std::variant<SimplePolygon, RejectReason> validate_polygon(std::span<const GeoPoint> raw) {
  for (const auto& p : raw) {
    if (!is_valid(p)) return RejectReason::NonFinite;
  }

  std::vector<GeoPoint> ring;
  ring.reserve(raw.size());
  for (const auto& p : raw) {
    if (ring.empty() || !(ring.back() == p)) ring.push_back(p);
  }
  // Explicit closure, possibly repeated after collapsing.
  while (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();

  std::vector<GeoPoint> distinct = ring;
  std::sort(distinct.begin(), distinct.end(), [](const GeoPoint& a, const GeoPoint& b) {
    return a.lon < b.lon || (a.lon == b.lon && a.lat < b.lat);
  });
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3) return RejectReason::TooFewVertices;

  if (!is_simple_ring(ring)) return RejectReason::SelfIntersecting;
  return SimplePolygon(std::move(ring));
}

double haversine_km(const GeoPoint& a, const GeoPoint& b) noexcept {
  const double lat1 = radians(a.lat);
  const double lat2 = radians(b.lat);
  const double dlat = std::fabs(lat1 - lat2);
  const double dlon = std::fabs(radians(a.lon) - radians(b.lon));
  const double s_lat = std::sin(dlat / 2.0);
  const double s_lon = std::sin(dlon / 2.0);
  const double h = s_lat * s_lat + std::cos(lat1) * std::cos(lat2) * s_lon * s_lon;
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

bool on_boundary(const GeoPoint& pt, const SimplePolygon& poly) noexcept {
  const auto v = poly.vertices();
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    if (on_segment(v[j], v[i], pt)) return true;
  }
  return false;
}

bool point_in_polygon(const GeoPoint& pt, const SimplePolygon& poly) noexcept {
  if (on_boundary(pt, poly)) return true;
  const auto v = poly.vertices();
  bool inside = false;
  // Half-open rule: an edge owns its lower endpoint, so a ray through a
  // vertex is counted exactly once.
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    const GeoPoint& a = v[j];
    const GeoPoint& b = v[i];
    if (a.lat <= pt.lat && b.lat > pt.lat) {
      if (cross(a, b, pt) > 0.0) inside = !inside;
    } else if (b.lat <= pt.lat && a.lat > pt.lat) {
      if (cross(a, b, pt) < 0.0) inside = !inside;
    }
  }
  return inside;
}

BoundingBox bounding_box(const SimplePolygon& poly) noexcept {
  const auto v = poly.vertices();
  BoundingBox box{v.front().lon, v.front().lat, v.front().lon, v.front().lat};
  for (const auto& p : v) {
    box.min_lon = std::min(box.min_lon, p.lon);
    box.min_lat = std::min(box.min_lat, p.lat);
    box.max_lon = std::max(box.max_lon, p.lon);
    box.max_lat = std::max(box.max_lat, p.lat);
  }
  return box;
}

}  // namespace fuzzygeo
