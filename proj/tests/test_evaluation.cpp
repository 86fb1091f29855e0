#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "fuzzygeo/evaluation.hpp"
#include "fuzzygeo/reports.hpp"

using namespace fuzzygeo;
using namespace fuzzygeo::testing;

namespace {

HitMatrix two_by_two(double nn, double ns, double sn, double ss) {
  return {{label("north"), label("south")}, {{nn, ns}, {sn, ss}}};
}

const double kEqual[] = {0.5, 0.5};

std::vector<GeoPoint> locations(const FuzzyGrid& g) {
  std::vector<GeoPoint> out;
  for (const auto& p : g.points) out.push_back(p.location);
  return out;
}

}  // namespace

TEST_CASE("precision and recall from the published hit table") {
  const auto m = precision_recall(two_by_two(0.994, 0.014, 0.006, 0.986), kEqual);
  const auto& n = m.per_label[0];
  const auto& s = m.per_label[1];
  // Hand arithmetic: .994/(.994+.014), .986/(.986+.006), .994/1.98, .986/1.98.
  CHECK(*n.precision == doctest::Approx(0.994 / 1.008));
  CHECK(std::fabs(*n.precision - 0.986) <= 0.002);
  CHECK(std::fabs(*s.precision - 0.994) <= 0.002);
  CHECK(std::fabs(*n.paper_recall - 0.502) <= 0.002);
  CHECK(std::fabs(*s.paper_recall - 0.498) <= 0.002);
  CHECK(*n.standard_recall == doctest::Approx(0.994));
  CHECK(*s.standard_recall == doctest::Approx(0.986));
}

TEST_CASE("precision and recall edge cases") {
  SUBCASE("identity") {
    const auto m = precision_recall(two_by_two(1, 0, 0, 1), kEqual);
    for (const auto& l : m.per_label) {
      CHECK(*l.precision == 1.0);
      CHECK(*l.paper_recall == 0.5);
      CHECK(*l.standard_recall == 1.0);
    }
  }
  SUBCASE("anti-diagonal") {
    const auto m = precision_recall(two_by_two(0, 1, 1, 0), kEqual);
    for (const auto& l : m.per_label) {
      CHECK(*l.precision == 0.0);
      CHECK_FALSE(l.paper_recall.has_value());  // 0 / 0
      CHECK(*l.standard_recall == 0.0);
    }
  }
  SUBCASE("label never predicted") {
    const auto m = precision_recall(two_by_two(1, 1, 0, 0), kEqual);
    CHECK_FALSE(m.per_label[1].precision.has_value());
    CHECK(*m.per_label[0].precision == 0.5);
  }
  SUBCASE("unequal class weights") {
    const double w[] = {0.25, 0.75};
    const auto m = precision_recall(two_by_two(0.8, 0.1, 0.2, 0.9), w);
    CHECK(*m.per_label[0].precision == doctest::Approx(0.8 * 0.25 / (0.8 * 0.25 + 0.1 * 0.75)));
    CHECK(*m.per_label[1].precision == doctest::Approx(0.9 * 0.75 / (0.9 * 0.75 + 0.2 * 0.25)));
  }
  SUBCASE("three labels") {
    HitMatrix m{{label("a"), label("b"), label("c")}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    const double w[] = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    CHECK(kind_of([&] { precision_recall(m, w); }) == ErrorKind::PaperRecallUndefined);
    const auto pr = precision_recall(m, w, false);
    CHECK(*pr.per_label[2].precision == 1.0);
    CHECK_FALSE(pr.per_label[2].paper_recall.has_value());
  }
  SUBCASE("bad weights") {
    const double w[] = {0.7, 0.7};
    CHECK(kind_of([&] { precision_recall(two_by_two(1, 0, 0, 1), w); }) == ErrorKind::InvalidArgument);
    const double neg[] = {1.5, -0.5};
    CHECK(kind_of([&] { precision_recall(two_by_two(1, 0, 0, 1), neg); }) == ErrorKind::InvalidArgument);
  }
}

TEST_CASE("paper recall of two labels sums to one") {
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 1000; ++i) {
    const double a = u(gen), b = u(gen);
    const auto m = precision_recall(two_by_two(a, 1 - b, 1 - a, b), kEqual);
    CHECK(*m.per_label[0].paper_recall + *m.per_label[1].paper_recall == 1.0);
  }
}

TEST_CASE("fold assignment") {
  const auto folds = assign_folds(98, 10, 11);
  REQUIRE(folds.size() == 10);
  std::multiset<std::size_t> seen;
  for (const auto& f : folds) {
    CHECK((f.size() == 9 || f.size() == 10));
    seen.insert(f.begin(), f.end());
  }
  CHECK(seen.size() == 98);
  for (std::size_t i = 0; i < 98; ++i) CHECK(seen.count(i) == 1);
  CHECK(assign_folds(98, 10, 11) == folds);
  CHECK_FALSE(assign_folds(98, 10, 12) == folds);
}

TEST_CASE("cross-validation") {
  const auto region = coastal_region();
  const std::vector<ResponseSet> sets{synth_responses(region, label("north"), north_model(), 24),
                                      synth_responses(region, label("south"), south_model(), 24)};
  CrossValConfig config;
  config.folds = 4;
  config.samples_per_polygon = 10;
  config.sample_grid_pct = 4;
  config.model_grid_pct = 5;
  config.seed = 11;

  SUBCASE("report shape and determinism") {
    const auto r = cross_validate(region, sets, config);
    CHECK(r.per_fold.size() == 4);
    CHECK(r.sample_count == 48 * 10);
    check_invariants(r);
    CHECK(r.mean_matrix.at(0, 0) > 0.9);
    CHECK(r.mean_matrix.at(1, 1) > 0.9);
    CHECK(to_json(cross_validate(region, sets, config)) == to_json(r));
    config.seed = 12;
    CHECK_FALSE(to_json(cross_validate(region, sets, config)) == to_json(r));
  }
  SUBCASE("identical corpora tie everywhere") {
    ResponseSet copy = sets[0];
    copy.label = label("aardvark");
    const std::vector<ResponseSet> twins{sets[0], copy};
    const auto r = cross_validate(region, twins, config);
    // Labels keep input order: north first, aardvark second; aardvark wins every tie.
    CHECK(r.mean_matrix.at(1, 1) == 1.0);
    CHECK(r.mean_matrix.at(1, 0) == 1.0);
    CHECK(r.mean_matrix.at(0, 0) == 0.0);
    CHECK(r.tie_count == r.sample_count);
  }
  SUBCASE("precondition failures") {
    config.folds = 30;
    CHECK(kind_of([&] { cross_validate(region, sets, config); }) == ErrorKind::InsufficientPolygons);
    config.folds = 1;
    CHECK(kind_of([&] { cross_validate(region, sets, config); }) == ErrorKind::InvalidArgument);
    config.folds = 4;
    const std::vector<ResponseSet> dup{sets[0], sets[0]};
    CHECK(kind_of([&] { cross_validate(region, dup, config); }) == ErrorKind::DuplicateLabel);
  }
}

TEST_CASE("granularity study") {
  const auto region = coastal_region();
  const auto north = synth_responses(region, label("north"), north_model(), 98);
  const double others[] = {5.0, 10.0, 5.0};
  const auto r = granularity_study(region, north, 5.0, others);
  REQUIRE(r.rows.size() == 3);
  CHECK(r.rows[0].mean_abs_diff == 0.0);
  CHECK(r.rows[0].std_abs_diff == 0.0);
  CHECK(r.rows[0].point_ratio == 1.0);
  CHECK(r.rows[1].point_count < r.baseline_point_count);
  CHECK(r.rows[1].mean_abs_diff > 0.0);
  CHECK(r.rows[1].mean_abs_diff <= 1.0);
  check_invariants(r);

  const double finer[] = {2.0};
  CHECK(kind_of([&] { granularity_study(region, north, 5.0, finer); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("antonymy") {
  const auto region = coastal_region();
  SUBCASE("exact complement grid, fuzzed") {
    std::mt19937_64 gen(77);
    std::uniform_real_distribution<double> u(0, 1);
    for (int round = 0; round < 20; ++round) {
      auto a = build_fuzzy_grid(region, synth_responses(region, label("north"), north_model(round), 10),
                                GranularitySpec(10));
      for (auto& p : a.points) p.md = u(gen);
      auto b = a;
      b.label = label("south");
      for (auto& p : b.points) p.md = 1.0 - p.md;
      const auto r = antonymy_check(a, b, locations(a));
      CHECK(r.mean_abs_diff == 0.0);
      CHECK(r.max_abs_diff == 0.0);
    }
  }
  SUBCASE("complementary survey") {
    SynthModel n{SynthModel::Kind::LatitudeHalfplane, 0.5, 0.15, SynthModel::Side::High, 11};
    SynthModel s = n;
    s.side = SynthModel::Side::Low;
    const auto a = build_fuzzy_grid(region, synth_responses(region, label("north"), n, 98), GranularitySpec(2));
    const auto b = build_fuzzy_grid(region, synth_responses(region, label("south"), s, 98), GranularitySpec(2));
    const auto r = antonymy_check(a, b, locations(a));
    CHECK(r.mean_abs_diff <= 1e-9);
    check_invariants(r);
  }
  SUBCASE("independent corpora differ") {
    const auto a = build_fuzzy_grid(region, synth_responses(region, label("north"), north_model(1), 98),
                                    GranularitySpec(2));
    const auto b = build_fuzzy_grid(region, synth_responses(region, label("south"), south_model(2), 98),
                                    GranularitySpec(2));
    const auto r = antonymy_check(a, b, make_grid_points(region, GranularitySpec(1)));
    CHECK(r.mean_abs_diff > 0.0);
    CHECK(r.max_abs_diff >= r.mean_abs_diff);
    check_invariants(r);
  }
  SUBCASE("no targets") {
    const auto a = build_fuzzy_grid(region, synth_responses(region, label("north"), north_model(), 5),
                                    GranularitySpec(10));
    CHECK(kind_of([&] { antonymy_check(a, a, {}); }) == ErrorKind::InvalidArgument);
  }
}

TEST_CASE("monotonicity") {
  SUBCASE("upward-closed corpora") {
    const auto region = coastal_region();
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const auto g = build_fuzzy_grid(region, synth_responses(region, label("north"), north_model(seed), 30),
                                      GranularitySpec(2.5));
      const auto r = monotonicity_check(g, Axis::Lat, Direction::Increasing);
      CHECK(r.violations.empty());
      CHECK(r.lines_checked > 0);
      // A south-facing corpus is monotone the other way.
      const auto s = build_fuzzy_grid(region, synth_responses(region, label("south"), south_model(seed), 30),
                                      GranularitySpec(2.5));
      CHECK(monotonicity_check(s, Axis::Lat, Direction::Decreasing).violations.empty());
      CHECK_FALSE(monotonicity_check(s, Axis::Lat, Direction::Increasing).violations.empty());
    }
  }
  SUBCASE("constructed counterexample") {
    const FuzzyGrid g{label("north"), GranularitySpec(50), {0, 0, 1, 1}, {{{0, 0}, 0.9}, {{0, 1}, 0.1}}, 1};
    const auto r = monotonicity_check(g, Axis::Lat, Direction::Increasing);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].point_a == GeoPoint{0, 0});
    CHECK(r.violations[0].point_b == GeoPoint{0, 1});
    CHECK(r.violations[0].md_a == 0.9);
    CHECK(r.violations[0].md_b == 0.1);
    check_invariants(r);
    CHECK(monotonicity_check(g, Axis::Lat, Direction::Decreasing).violations.empty());
    CHECK(monotonicity_check(g, Axis::Lon, Direction::Increasing).violations.empty());
  }
  SUBCASE("single point") {
    const FuzzyGrid g{label("north"), GranularitySpec(50), {0, 0, 1, 1}, {{{0, 0}, 1.0}}, 1};
    CHECK(monotonicity_check(g, Axis::Lat, Direction::Increasing).violations.empty());
  }
}

TEST_CASE("report self-checks catch tampering") {
  CrossValReport r;
  r.folds = 1;
  r.per_fold = {two_by_two(0.9, 0.2, 0.1, 0.8)};
  r.mean_matrix = r.per_fold[0];
  check_invariants(r);
  r.mean_matrix.fractions[0][0] = 0.95;
  CHECK(kind_of([&] { check_invariants(r); }) == ErrorKind::InvariantViolation);

  AntonymyReport a{0.5, 0.5, {{{0, 0}, 0.25}}};
  CHECK(kind_of([&] { check_invariants(a); }) == ErrorKind::InvariantViolation);

  MonotonicityReport m{Axis::Lat, Direction::Increasing, 1, {{{0, 0}, {0, 1}, 0.2, 0.3}}};
  CHECK(kind_of([&] { check_invariants(m); }) == ErrorKind::InvariantViolation);
}

TEST_CASE("report documents") {
  const FuzzyGrid g{label("north"), GranularitySpec(50), {0, 0, 1, 1}, {{{0, 0}, 0.9}, {{0, 1}, 0.1}}, 1};
  const auto text = to_json(monotonicity_check(g, Axis::Lat, Direction::Increasing));
  CHECK(text.find("\"format_version\": 1") != std::string::npos);
  CHECK(text.find("\"report\": \"monotonicity\"") != std::string::npos);
  const auto table = format_table(monotonicity_check(g, Axis::Lat, Direction::Increasing));
  CHECK(table.find("1 violations") != std::string::npos);
}
