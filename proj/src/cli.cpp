#include "fuzzygeo/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "fuzzygeo/dataset.hpp"
#include "fuzzygeo/error.hpp"
#include "fuzzygeo/evaluation.hpp"
#include "fuzzygeo/grid.hpp"
#include "fuzzygeo/grid_io.hpp"
#include "fuzzygeo/membership.hpp"
#include "fuzzygeo/reports.hpp"

namespace fuzzygeo {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << content) || !out.flush()) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
}

std::string degree(double md) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12f", md);
  return buf;
}

struct Options {
  std::string region;
  std::vector<std::string> responses;
  std::vector<std::string> descriptors;
  std::string grid;
  std::vector<std::string> grids;
  std::string grid_b;
  std::string out;
  std::string format = "csv";
  double granularity = 1.0;
  double epsilon_km = 1e-5;
  double lon = 0.0;
  double lat = 0.0;
  std::size_t folds = 10;
  std::size_t samples = 30;
  double sample_granularity = 1.0;
  double model_granularity = 2.0;
  std::uint64_t seed = 0;
  double baseline = 1.0;
  std::vector<double> others{2.0, 5.0, 10.0};
  std::size_t timing_repeats = 1;
  std::string kind = "lat";
  std::string side = "high";
  double center = 0.5;
  double jitter = 0.15;
  std::size_t count = 98;
  std::string axis = "lat";
  std::string direction = "increasing";
};

EvalParams eval_params(const Options& o) {
  if (!(o.epsilon_km > 0.0)) throw Error(ErrorKind::InvalidArgument, "--epsilon-km must be positive");
  return EvalParams{o.epsilon_km};
}

// Writes the report if --out was given, after verifying it is self-consistent.
template <typename Report>
void emit(const Report& report, const Options& o, std::ostream& out) {
  check_invariants(report);
  out << format_table(report);
  if (!o.out.empty()) write_file(o.out, to_json(report));
}

void cmd_build(const Options& o, std::ostream& out) {
  const GranularitySpec spec(o.granularity);
  const auto label = DescriptorLabel::parse(o.descriptors.at(0));
  const auto region = load_region(read_file(o.region));
  const auto [responses, cleaning] = load_responses(read_file(o.responses.at(0)), label);
  for (const auto& r : cleaning.rejected) {
    out << "rejected feature " << r.index << ": " << to_string(r.reason) << "\n";
  }

  const auto points = make_grid_points(region, spec);
  const auto start = std::chrono::steady_clock::now();
  const auto counts = coverage_counts(points, responses.polygons);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  const FuzzyGrid grid = normalize_counts(label, spec, region.bbox(), points, counts, responses.polygons.size());
  write_file(o.out, save_grid(grid));
  out << "descriptor " << label.str() << ": " << cleaning.accepted_count << " responses, " << grid.points.size()
      << " points, build seconds " << elapsed.count() << "\n";
}

void cmd_eval(const Options& o, std::ostream& out) {
  const FuzzyGrid grid = load_grid(read_file(o.grid));
  out << degree(evaluate(grid, GeoPoint{o.lon, o.lat}, eval_params(o))) << "\n";
}

void cmd_classify(const Options& o, std::ostream& out) {
  std::vector<FuzzyGrid> grids;
  for (const auto& path : o.grids) grids.push_back(load_grid(read_file(path)));
  const Classification c = classify(grids, GeoPoint{o.lon, o.lat}, eval_params(o));
  for (const auto& [label, md] : c.per_descriptor) out << label.str() << " " << degree(md) << "\n";
  out << "winner " << c.winner.str() << (c.tied ? " (tied)" : "") << "\n";
}

void cmd_synth(const Options& o, std::ostream& out) {
  const auto region = load_region(read_file(o.region));
  SynthModel model;
  model.kind = o.kind == "lat" ? SynthModel::Kind::LatitudeHalfplane : SynthModel::Kind::LongitudeHalfplane;
  model.side = o.side == "high" ? SynthModel::Side::High : SynthModel::Side::Low;
  model.center_fraction = o.center;
  model.jitter_fraction = o.jitter;
  model.seed = o.seed;
  const auto responses = synth_responses(region, DescriptorLabel::parse(o.descriptors.at(0)), model, o.count);
  write_file(o.out, to_geojson(responses));
  out << "wrote " << responses.polygons.size() << " polygons for " << responses.label.str() << "\n";
}

void cmd_granularity(const Options& o, std::ostream& out) {
  const auto label = DescriptorLabel::parse(o.descriptors.at(0));
  const auto region = load_region(read_file(o.region));
  const auto responses = load_responses(read_file(o.responses.at(0)), label).first;
  emit(granularity_study(region, responses, o.baseline, o.others, eval_params(o), o.timing_repeats), o, out);
}

void cmd_xval(const Options& o, std::ostream& out) {
  if (o.responses.size() != 1 && o.responses.size() != o.descriptors.size()) {
    throw Error(ErrorKind::InvalidArgument, "give one --responses file, or one per --descriptor");
  }
  const auto region = load_region(read_file(o.region));
  std::vector<ResponseSet> sets;
  for (std::size_t i = 0; i < o.descriptors.size(); ++i) {
    const auto& path = o.responses.size() == 1 ? o.responses[0] : o.responses[i];
    sets.push_back(load_responses(read_file(path), DescriptorLabel::parse(o.descriptors[i])).first);
  }
  CrossValConfig config;
  config.folds = o.folds;
  config.samples_per_polygon = o.samples;
  config.sample_grid_pct = o.sample_granularity;
  config.model_grid_pct = o.model_granularity;
  config.seed = o.seed;
  config.params = eval_params(o);
  emit(cross_validate(region, sets, config), o, out);
}

void cmd_antonymy(const Options& o, std::ostream& out) {
  const FuzzyGrid a = load_grid(read_file(o.grid));
  const FuzzyGrid b = load_grid(read_file(o.grid_b));
  std::vector<GeoPoint> targets;
  if (!o.region.empty()) {
    targets = make_grid_points(load_region(read_file(o.region)), GranularitySpec(o.granularity));
  } else {
    for (const auto& p : a.points) targets.push_back(p.location);
  }
  emit(antonymy_check(a, b, targets, eval_params(o)), o, out);
}

void cmd_monotonicity(const Options& o, std::ostream& out) {
  const FuzzyGrid grid = load_grid(read_file(o.grid));
  emit(monotonicity_check(grid, o.axis == "lat" ? Axis::Lat : Axis::Lon,
                          o.direction == "increasing" ? Direction::Increasing : Direction::Decreasing),
       o, out);
}

void cmd_export(const Options& o, std::ostream& out) {
  const FuzzyGrid grid = load_grid(read_file(o.grid));
  const std::string content = o.format == "csv" ? export_csv(grid) : export_geojson(grid);
  if (o.out.empty()) {
    out << content;
  } else {
    write_file(o.out, content);
    out << "exported " << grid.points.size() << " points\n";
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Fuzzy geographical descriptors from polygon surveys", "fuzzygeo"};
  app.require_subcommand(1);
  std::map<CLI::App*, std::function<void(const Options&, std::ostream&)>> handlers;

  auto eps = [&](CLI::App* c) { c->add_option("--epsilon-km", o.epsilon_km, "Snap radius in km")->capture_default_str(); };
  auto out_opt = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--out", o.out, "Output file");
    if (required) opt->required();
  };

  auto* build = app.add_subcommand("build", "Build a fuzzy grid from a response corpus");
  build->add_option("--region", o.region, "Region GeoJSON")->required();
  build->add_option("--responses", o.responses, "Responses GeoJSON")->required()->expected(1);
  build->add_option("--descriptor", o.descriptors, "Descriptor label")->required()->expected(1);
  build->add_option("--granularity", o.granularity, "Grid spacing, % of bbox extent")->capture_default_str();
  out_opt(build, true);
  handlers[build] = cmd_build;

  auto* eval = app.add_subcommand("eval", "Membership degree of one location");
  eval->add_option("--grid", o.grid, "Grid file")->required();
  eval->add_option("--lon", o.lon)->required();
  eval->add_option("--lat", o.lat)->required();
  eps(eval);
  handlers[eval] = cmd_eval;

  auto* cls = app.add_subcommand("classify", "Winning descriptor at one location");
  cls->add_option("--grid", o.grids, "Grid files, one per descriptor")->required();
  cls->add_option("--lon", o.lon)->required();
  cls->add_option("--lat", o.lat)->required();
  eps(cls);
  handlers[cls] = cmd_classify;

  auto* synth = app.add_subcommand("synth", "Write a synthetic jittered half-plane corpus");
  synth->add_option("--region", o.region, "Region GeoJSON")->required();
  synth->add_option("--descriptor", o.descriptors, "Descriptor label")->required()->expected(1);
  synth->add_option("--kind", o.kind)->check(CLI::IsMember({"lat", "lon"}))->capture_default_str();
  synth->add_option("--side", o.side)->check(CLI::IsMember({"high", "low"}))->capture_default_str();
  synth->add_option("--center", o.center, "Dividing line, fraction of extent")->capture_default_str();
  synth->add_option("--jitter", o.jitter, "Jitter, fraction of extent")->capture_default_str();
  synth->add_option("--count", o.count, "Number of polygons")->capture_default_str();
  synth->add_option("--seed", o.seed)->capture_default_str();
  out_opt(synth, true);
  handlers[synth] = cmd_synth;

  auto* gran = app.add_subcommand("granularity", "Efficiency/approximation study over granularities");
  gran->add_option("--region", o.region, "Region GeoJSON")->required();
  gran->add_option("--responses", o.responses, "Responses GeoJSON")->required()->expected(1);
  gran->add_option("--descriptor", o.descriptors, "Descriptor label")->required()->expected(1);
  gran->add_option("--granularity,--baseline", o.baseline, "Baseline granularity")->capture_default_str();
  gran->add_option("--others", o.others, "Coarser granularities")->delimiter(',')->capture_default_str();
  gran->add_option("--timing-repeats", o.timing_repeats, "Keep the fastest of N timed runs")->capture_default_str();
  eps(gran);
  out_opt(gran, false);
  handlers[gran] = cmd_granularity;

  auto* xval = app.add_subcommand("xval", "K-fold cross-validation of several descriptors");
  xval->add_option("--region", o.region, "Region GeoJSON")->required();
  xval->add_option("--responses", o.responses, "Responses GeoJSON (one, or one per descriptor)")->required();
  xval->add_option("--descriptor", o.descriptors, "Descriptor labels")->required();
  xval->add_option("--folds", o.folds)->capture_default_str();
  xval->add_option("--samples", o.samples, "Test points per held-out polygon")->capture_default_str();
  xval->add_option("--sample-granularity", o.sample_granularity)->capture_default_str();
  xval->add_option("--model-granularity", o.model_granularity)->capture_default_str();
  xval->add_option("--seed", o.seed)->capture_default_str();
  eps(xval);
  out_opt(xval, false);
  handlers[xval] = cmd_xval;

  auto* ant = app.add_subcommand("antonymy", "Compare mu_b against 1 - mu_a");
  ant->add_option("--grid-a", o.grid, "Grid of the first descriptor")->required();
  ant->add_option("--grid-b", o.grid_b, "Grid of the antonym")->required();
  ant->add_option("--region", o.region, "Evaluate on this region's lattice instead of grid-a's points");
  ant->add_option("--granularity", o.granularity, "Lattice spacing used with --region")->capture_default_str();
  eps(ant);
  out_opt(ant, false);
  handlers[ant] = cmd_antonymy;

  auto* mono = app.add_subcommand("monotonicity", "Audit a grid for monotonic degrees along an axis");
  mono->add_option("--grid", o.grid, "Grid file")->required();
  mono->add_option("--axis", o.axis)->check(CLI::IsMember({"lat", "lon"}))->capture_default_str();
  mono->add_option("--direction", o.direction)->check(CLI::IsMember({"increasing", "decreasing"}))->capture_default_str();
  out_opt(mono, false);
  handlers[mono] = cmd_monotonicity;

  auto* exp = app.add_subcommand("export", "Convert a grid file to CSV or GeoJSON");
  exp->add_option("--grid", o.grid, "Grid file")->required();
  exp->add_option("--format", o.format)->check(CLI::IsMember({"csv", "geojson"}))->capture_default_str();
  out_opt(exp, false);
  handlers[exp] = cmd_export;

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    for (auto& [cmd, handler] : handlers) {
      if (cmd->parsed()) handler(o, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::InvariantViolation ? kExitInternal : kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace fuzzygeo
