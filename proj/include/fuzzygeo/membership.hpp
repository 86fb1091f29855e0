#pragma once

#include <array>
#include <map>
#include <span>

#include "fuzzygeo/grid.hpp"

namespace fuzzygeo {

struct EvalParams {
  // Snap radius in kilometers; queries closer than this to their nearest grid
  // point take that point's degree.
  double epsilon_km = 1e-5;
  static constexpr std::size_t kNeighborCount = 4;
};

struct Neighbor {
  std::size_t index = 0;  // canonical grid index
  double distance_km = 0.0;
  double md = 0.0;
};

/// Full trace of one evaluation: the selected neighbors (nearest first), the
/// weight each received and the resulting degree.
struct EvaluationTrace {
  std::array<Neighbor, EvalParams::kNeighborCount> neighbors{};
  std::array<double, EvalParams::kNeighborCount> weights{};
  bool snapped = false;
  double md = 0.0;
};

/// Throws Error{InsufficientGrid} unless the grid has at least four points.
void require_evaluable(const FuzzyGrid& grid);

/// Weighting step on four neighbors already sorted nearest first.
EvaluationTrace combine_neighbors(const std::array<Neighbor, EvalParams::kNeighborCount>& nearest,
                                  double epsilon_km);

/// Membership degree of `ep` under `grid`.
///
/// The four grid points closest to `ep` (haversine distance, ties broken by
/// grid index) are combined. If the nearest is within epsilon its degree is
/// returned as is. Otherwise, with distances d1 <= d2 <= d3 <= d4 and total T,
/// the weights d_i / T are assigned in reverse order: the nearest point gets
/// d4 / T, the farthest d1 / T. The weights sum to one, so the result is a
/// convex combination of the four degrees.
double evaluate(const FuzzyGrid& grid, const GeoPoint& ep, const EvalParams& params = {});

EvaluationTrace evaluate_traced(const FuzzyGrid& grid, const GeoPoint& ep, const EvalParams& params = {});

struct Classification {
  DescriptorLabel winner;
  double winning_md = 0.0;
  std::map<DescriptorLabel, double> per_descriptor;
  bool tied = false;
};

/// Picks the label with the largest degree. Exact ties go to the
/// lexicographically smallest label and set `tied`.
/// Throws Error{InvalidArgument} on an empty map.
Classification pick_winner(std::map<DescriptorLabel, double> per_descriptor);

/// Evaluates every grid at `ep` and picks the winner.
/// Throws Error{InvalidArgument}, Error{DuplicateLabel} or Error{InsufficientGrid}.
Classification classify(std::span<const FuzzyGrid> grids, const GeoPoint& ep, const EvalParams& params = {});

}  // namespace fuzzygeo
