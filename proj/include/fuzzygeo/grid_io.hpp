#pragma once

#include <string>
#include <string_view>

#include "fuzzygeo/grid.hpp"

namespace fuzzygeo {

inline constexpr int kGridFormatVersion = 1;

/// JSON grid document:
///   {"format_version": 1, "descriptor": "north", "granularity_pct": 2.0,
///    "bbox": [min_lon, min_lat, max_lon, max_lat], "response_count": 98,
///    "points": [[lon, lat, md], ...]}
/// Numbers are written in shortest round-trip form, so loading restores every
/// double exactly.
std::string save_grid(const FuzzyGrid& grid);

/// Throws Error{ParseError} on malformed content or out-of-range values and
/// Error{VersionMismatch} on an unknown format_version.
FuzzyGrid load_grid(std::string_view content);

/// "lon,lat,md" header then one row per point in grid order.
std::string export_csv(const FuzzyGrid& grid);

/// FeatureCollection of Point features carrying an "md" property.
std::string export_geojson(const FuzzyGrid& grid);

}  // namespace fuzzygeo
