#include "fuzzygeo/membership.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "fuzzygeo/error.hpp"

namespace fuzzygeo {

namespace {

constexpr std::size_t kK = EvalParams::kNeighborCount;

bool closer(const Neighbor& a, const Neighbor& b) noexcept {
  return a.distance_km < b.distance_km || (a.distance_km == b.distance_km && a.index < b.index);
}

}  // namespace

void require_evaluable(const FuzzyGrid& grid) {
  if (grid.points.size() < kK) {
    throw Error(ErrorKind::InsufficientGrid, "grid '" + grid.label.str() + "' has " +
                                                 std::to_string(grid.points.size()) +
                                                 " points, at least 4 are needed");
  }
}

EvaluationTrace combine_neighbors(const std::array<Neighbor, EvalParams::kNeighborCount>& nearest,
                                  double epsilon_km) {
  EvaluationTrace trace;
  trace.neighbors = nearest;
  if (nearest[0].distance_km < epsilon_km) {
    trace.snapped = true;
    trace.weights = {1.0, 0.0, 0.0, 0.0};
    trace.md = nearest[0].md;
    return trace;
  }

  double total = 0.0;
  for (const auto& n : nearest) total += n.distance_km;
  double md = 0.0;
  double lo = nearest[0].md;
  double hi = nearest[0].md;
  for (std::size_t i = 0; i < kK; ++i) {
    trace.weights[i] = nearest[kK - 1 - i].distance_km / total;
    md += trace.weights[i] * nearest[i].md;
    lo = std::min(lo, nearest[i].md);
    hi = std::max(hi, nearest[i].md);
  }
  // Rounding in the weighted sum may step an ulp outside the neighbors' range.
  trace.md = std::clamp(md, lo, hi);
  return trace;
}

EvaluationTrace evaluate_traced(const FuzzyGrid& grid, const GeoPoint& ep, const EvalParams& params) {
  require_evaluable(grid);
  if (!(params.epsilon_km > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "epsilon_km must be positive");
  }

  // Running top-4 by (distance, index); a full scan keeps tie resolution exact.
  std::array<Neighbor, kK> best{};
  std::size_t filled = 0;
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    const Neighbor candidate{i, haversine_km(ep, grid.points[i].location), grid.points[i].md};
    if (filled == kK && !closer(candidate, best[kK - 1])) continue;
    std::size_t pos = filled < kK ? filled++ : kK - 1;
    while (pos > 0 && closer(candidate, best[pos - 1])) {
      best[pos] = best[pos - 1];
      --pos;
    }
    best[pos] = candidate;
  }

  return combine_neighbors(best, params.epsilon_km);
}

double evaluate(const FuzzyGrid& grid, const GeoPoint& ep, const EvalParams& params) {
  return evaluate_traced(grid, ep, params).md;
}

Classification pick_winner(std::map<DescriptorLabel, double> per_descriptor) {
  if (per_descriptor.empty()) throw Error(ErrorKind::InvalidArgument, "nothing to classify");
  auto best = per_descriptor.begin();
  for (auto it = std::next(best); it != per_descriptor.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  const double top = best->second;
  const auto at_top = std::count_if(per_descriptor.begin(), per_descriptor.end(),
                                    [top](const auto& kv) { return kv.second == top; });
  Classification out{best->first, top, {}, at_top > 1};
  out.per_descriptor = std::move(per_descriptor);
  return out;
}

Classification classify(std::span<const FuzzyGrid> grids, const GeoPoint& ep, const EvalParams& params) {
  if (grids.empty()) throw Error(ErrorKind::InvalidArgument, "classify needs at least one grid");
  std::map<DescriptorLabel, double> degrees;
  for (const auto& grid : grids) {
    if (degrees.contains(grid.label)) {
      throw Error(ErrorKind::DuplicateLabel, "descriptor '" + grid.label.str() + "' given twice");
    }
    degrees.emplace(grid.label, 0.0);
  }
  for (const auto& grid : grids) degrees[grid.label] = evaluate(grid, ep, params);
  return pick_winner(std::move(degrees));
}

}  // namespace fuzzygeo
