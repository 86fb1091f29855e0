#include "fuzzygeo/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "fuzzygeo/error.hpp"
#include "fuzzygeo/random.hpp"

namespace fuzzygeo {

namespace {

struct TimedCounts {
  std::vector<std::size_t> counts;
  double seconds = 0.0;
};

TimedCounts timed_coverage(std::span<const GeoPoint> points, std::span<const SimplePolygon> polygons,
                           std::size_t repeats) {
  TimedCounts out;
  out.seconds = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < std::max<std::size_t>(repeats, 1); ++r) {
    const auto start = std::chrono::steady_clock::now();
    auto counts = coverage_counts(points, polygons);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    out.seconds = std::min(out.seconds, elapsed.count());
    out.counts = std::move(counts);
  }
  return out;
}

double ratio(double num, double den) {
  return den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
}

// Stream namespaces for derive_seed, so shuffle and sampling draws never share
// a child seed.
constexpr std::uint64_t kShuffleStreams = 0;
constexpr std::uint64_t kFoldStreams = 1;

HitMatrix zero_matrix(const std::vector<DescriptorLabel>& labels) {
  return {labels, std::vector<std::vector<double>>(labels.size(), std::vector<double>(labels.size(), 0.0))};
}

}  // namespace

GranularityStudyReport granularity_study(const RegionBoundary& region, const ResponseSet& responses,
                                         double baseline_pct, std::span<const double> others,
                                         const EvalParams& params, std::size_t timing_repeats) {
  const GranularitySpec base_spec(baseline_pct);
  for (double g : others) {
    if (g < baseline_pct) {
      throw Error(ErrorKind::InvalidArgument, "granularity " + std::to_string(g) +
                                                  "% is finer than the baseline " +
                                                  std::to_string(baseline_pct) + "%");
    }
  }

  const auto base_points = make_grid_points(region, base_spec);
  const auto base_timed = timed_coverage(base_points, responses.polygons, timing_repeats);
  const FuzzyGrid base = normalize_counts(responses.label, base_spec, region.bbox(), base_points,
                                          base_timed.counts, responses.polygons.size());

  GranularityStudyReport report;
  report.baseline_pct = baseline_pct;
  report.baseline_point_count = base_points.size();
  report.baseline_seconds = base_timed.seconds;
  report.timing_repeats = std::max<std::size_t>(timing_repeats, 1);

  for (double g : others) {
    const GranularitySpec spec(g);
    const auto points = make_grid_points(region, spec);
    const auto timed = timed_coverage(points, responses.polygons, timing_repeats);
    const FuzzyGrid coarse = normalize_counts(responses.label, spec, region.bbox(), points, timed.counts,
                                              responses.polygons.size());
    const FuzzyGrid resampled = interpolate_grid(coarse, base_points, base_spec, params);

    // base_points is already in grid order, so the two grids align by index.
    const std::size_t n = base.points.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += std::fabs(resampled.points[i].md - base.points[i].md);
    const double mean = sum / static_cast<double>(n);
    double sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = std::fabs(resampled.points[i].md - base.points[i].md) - mean;
      sq += d * d;
    }

    report.rows.push_back({g, points.size(), timed.seconds, ratio(base_timed.seconds, timed.seconds),
                           static_cast<double>(base_points.size()) / static_cast<double>(points.size()),
                           mean, std::sqrt(sq / static_cast<double>(n))});
  }
  return report;
}

PRMetrics precision_recall(const HitMatrix& matrix, std::span<const double> class_weights,
                           bool require_paper_recall) {
  const std::size_t k = matrix.labels.size();
  if (k == 0 || matrix.fractions.size() != k ||
      std::any_of(matrix.fractions.begin(), matrix.fractions.end(), [k](const auto& row) { return row.size() != k; })) {
    throw Error(ErrorKind::InvalidArgument, "hit matrix must be square and match its labels");
  }
  if (class_weights.size() != k || std::any_of(class_weights.begin(), class_weights.end(), [](double w) { return !(w > 0.0); }) ||
      std::fabs(std::accumulate(class_weights.begin(), class_weights.end(), 0.0) - 1.0) > 1e-9) {
    throw Error(ErrorKind::InvalidArgument, "class weights must be positive, one per label, summing to 1");
  }
  if (k != 2 && require_paper_recall) {
    throw Error(ErrorKind::PaperRecallUndefined,
                "paper recall is defined for two labels, got " + std::to_string(k));
  }

  PRMetrics out;
  for (std::size_t a = 0; a < k; ++a) {
    LabelMetrics m{matrix.labels[a], {}, {}, {}};
    double predicted = 0.0;
    double column = 0.0;
    for (std::size_t t = 0; t < k; ++t) {
      predicted += matrix.at(a, t) * class_weights[t];
      column += matrix.at(t, a);
    }
    if (predicted > 0.0) m.precision = matrix.at(a, a) * class_weights[a] / predicted;
    if (column > 0.0) m.standard_recall = matrix.at(a, a) / column;
    out.per_label.push_back(std::move(m));
  }

  if (k == 2) {
    const double diag = matrix.at(0, 0) + matrix.at(1, 1);
    if (diag > 0.0) {
      // Second value taken as the complement so the pair sums to exactly one.
      out.per_label[0].paper_recall = matrix.at(0, 0) / diag;
      out.per_label[1].paper_recall = 1.0 - *out.per_label[0].paper_recall;
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> assign_folds(std::size_t n, std::size_t folds, std::uint64_t seed) {
  if (folds == 0) throw Error(ErrorKind::InvalidArgument, "fold count must be positive");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  shuffle(std::span<std::size_t>(order), rng);

  std::vector<std::vector<std::size_t>> out(folds);
  for (std::size_t k = 0; k < folds; ++k) {
    out[k].assign(order.begin() + static_cast<std::ptrdiff_t>(k * n / folds),
                  order.begin() + static_cast<std::ptrdiff_t>((k + 1) * n / folds));
  }
  return out;
}

CrossValReport cross_validate(const RegionBoundary& region, std::span<const ResponseSet> response_sets,
                              const CrossValConfig& config) {
  if (config.folds < 2) throw Error(ErrorKind::InvalidArgument, "cross-validation needs at least 2 folds");
  if (response_sets.empty()) throw Error(ErrorKind::InvalidArgument, "no response sets given");
  if (config.samples_per_polygon == 0) {
    throw Error(ErrorKind::InvalidArgument, "samples per polygon must be positive");
  }
  const GranularitySpec model_spec(config.model_grid_pct);
  const GranularitySpec sample_spec(config.sample_grid_pct);

  std::vector<DescriptorLabel> labels;
  for (const auto& set : response_sets) {
    if (std::find(labels.begin(), labels.end(), set.label) != labels.end()) {
      throw Error(ErrorKind::DuplicateLabel, "descriptor '" + set.label.str() + "' given twice");
    }
    if (set.polygons.size() < config.folds) {
      throw Error(ErrorKind::InsufficientPolygons,
                  "descriptor '" + set.label.str() + "' has " + std::to_string(set.polygons.size()) +
                      " polygons, fewer than " + std::to_string(config.folds) + " folds");
    }
    labels.push_back(set.label);
  }
  const std::size_t k = labels.size();

  // Every label uses the same shuffle stream, so equally sized corpora are
  // split identically.
  std::vector<std::vector<std::vector<std::size_t>>> fold_sets;  // [label][fold] -> polygon indices
  const std::uint64_t shuffle_seed = derive_seed(config.seed, kShuffleStreams);
  for (std::size_t l = 0; l < k; ++l) {
    fold_sets.push_back(assign_folds(response_sets[l].polygons.size(), config.folds, shuffle_seed));
  }

  const auto sample_points = make_grid_points(region, sample_spec);
  const std::uint64_t fold_root = derive_seed(config.seed, kFoldStreams);

  CrossValReport report;
  report.folds = config.folds;
  report.granularity_pct = config.model_grid_pct;
  report.sample_granularity_pct = config.sample_grid_pct;
  report.samples_per_polygon = config.samples_per_polygon;
  report.seed = config.seed;

  for (std::size_t fold = 0; fold < config.folds; ++fold) {
    std::vector<FuzzyGrid> grids;
    grids.reserve(k);
    for (std::size_t l = 0; l < k; ++l) {
      std::vector<bool> held_out(response_sets[l].polygons.size(), false);
      for (std::size_t idx : fold_sets[l][fold]) held_out[idx] = true;
      ResponseSet training{labels[l], {}};
      for (std::size_t i = 0; i < held_out.size(); ++i) {
        if (!held_out[i]) training.polygons.push_back(response_sets[l].polygons[i]);
      }
      grids.push_back(build_fuzzy_grid(region, training, model_spec));
    }

    Rng rng(derive_seed(fold_root, fold));
    HitMatrix matrix = zero_matrix(labels);
    for (std::size_t truth = 0; truth < k; ++truth) {
      std::size_t scored = 0;
      for (std::size_t idx : fold_sets[truth][fold]) {
        const SimplePolygon& poly = response_sets[truth].polygons[idx];
        std::vector<GeoPoint> candidates;
        for (const auto& p : sample_points) {
          if (point_in_polygon(p, poly)) candidates.push_back(p);
        }
        if (candidates.empty()) {
          ++report.skipped_polygons;
          continue;
        }
        // Partial Fisher-Yates: the first `take` entries are a uniform sample
        // without replacement.
        const std::size_t take = std::min(config.samples_per_polygon, candidates.size());
        for (std::size_t i = 0; i < take; ++i) {
          const auto j = i + static_cast<std::size_t>(rng.below(candidates.size() - i));
          std::swap(candidates[i], candidates[j]);
        }

        std::vector<std::size_t> wins(k, 0);
        for (std::size_t s = 0; s < take; ++s) {
          const Classification c = classify(grids, candidates[s], config.params);
          const auto w = static_cast<std::size_t>(std::find(labels.begin(), labels.end(), c.winner) - labels.begin());
          ++wins[w];
          if (c.tied) ++report.tie_count;
        }
        report.sample_count += take;
        for (std::size_t w = 0; w < k; ++w) {
          matrix.fractions[w][truth] += static_cast<double>(wins[w]) / static_cast<double>(take);
        }
        ++scored;
      }
      if (scored == 0) {
        throw Error(ErrorKind::NoTestPoints, "fold " + std::to_string(fold) + ": no held-out '" +
                                                 labels[truth].str() + "' polygon contains a sample point");
      }
      for (std::size_t w = 0; w < k; ++w) matrix.fractions[w][truth] /= static_cast<double>(scored);
    }
    report.per_fold.push_back(std::move(matrix));
  }

  report.mean_matrix = zero_matrix(labels);
  for (const auto& m : report.per_fold) {
    for (std::size_t w = 0; w < k; ++w) {
      for (std::size_t t = 0; t < k; ++t) report.mean_matrix.fractions[w][t] += m.at(w, t);
    }
  }
  for (auto& row : report.mean_matrix.fractions) {
    for (double& v : row) v /= static_cast<double>(config.folds);
  }

  const std::vector<double> equal(k, 1.0 / static_cast<double>(k));
  report.metrics = precision_recall(report.mean_matrix, equal, /*require_paper_recall=*/false);
  return report;
}

AntonymyReport antonymy_check(const FuzzyGrid& grid_a, const FuzzyGrid& grid_b,
                              std::span<const GeoPoint> targets, const EvalParams& params) {
  if (targets.empty()) throw Error(ErrorKind::InvalidArgument, "antonymy check needs target points");
  AntonymyReport report;
  report.diff_points.reserve(targets.size());
  double sum = 0.0;
  for (const auto& p : targets) {
    const double diff = evaluate(grid_b, p, params) - (1.0 - evaluate(grid_a, p, params));
    report.diff_points.push_back({p, diff});
    sum += std::fabs(diff);
    report.max_abs_diff = std::max(report.max_abs_diff, std::fabs(diff));
  }
  report.mean_abs_diff = sum / static_cast<double>(targets.size());
  return report;
}

MonotonicityReport monotonicity_check(const FuzzyGrid& grid, Axis axis, Direction direction) {
  const bool along_lat = axis == Axis::Lat;
  // Line key is the fixed coordinate; lattice points share it exactly.
  std::map<double, std::vector<std::size_t>> lines;
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    const GeoPoint& p = grid.points[i].location;
    lines[along_lat ? p.lon : p.lat].push_back(i);
  }

  MonotonicityReport report{axis, direction, lines.size(), {}};
  for (auto& [key, members] : lines) {
    std::stable_sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      const GeoPoint& pa = grid.points[a].location;
      const GeoPoint& pb = grid.points[b].location;
      return along_lat ? pa.lat < pb.lat : pa.lon < pb.lon;
    });
    if (direction == Direction::Decreasing) std::reverse(members.begin(), members.end());
    for (std::size_t i = 1; i < members.size(); ++i) {
      const GridPoint& a = grid.points[members[i - 1]];
      const GridPoint& b = grid.points[members[i]];
      if (a.md > b.md) report.violations.push_back({a.location, b.location, a.md, b.md});
    }
  }
  return report;
}

}  // namespace fuzzygeo
