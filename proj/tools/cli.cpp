#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <variant>

#include "heisgeo/csv.hpp"
#include "heisgeo/experiments.hpp"
#include "heisgeo/geodesics.hpp"
#include "heisgeo/horoboundary.hpp"
#include "heisgeo/metrics.hpp"
#include "heisgeo/oracle.hpp"

namespace heisgeo::cli {
namespace {

using json = nlohmann::ordered_json;
using Cell = std::variant<double, long long, bool, std::string>;

constexpr double kPi = std::numbers::pi;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Report {
  std::string command;
  json config = json::object();
  json summary = json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  bool pass = true;
};

struct Common {
  std::string format;
  std::string out_path;
  std::uint64_t seed = kDefaultOracleSeed;
};

json cell_json(const Cell& c) {
  return std::visit([](const auto& v) { return json(v); }, c);
}

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return std::get<std::string>(c);
}

void emit(const Report& report, const std::string& format, std::ostream& out) {
  if (format == "csv") {
    std::vector<CsvRow> rows{report.columns};
    for (const auto& row : report.rows) {
      CsvRow text;
      for (const Cell& c : row) text.push_back(cell_text(c));
      rows.push_back(std::move(text));
    }
    write_csv(out, rows);
    return;
  }
  json records = json::array();
  for (const auto& row : report.rows) {
    json record = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) record[report.columns[i]] = cell_json(row[i]);
    records.push_back(std::move(record));
  }
  json doc = json::object();
  doc["version"] = 1;
  doc["command"] = report.command;
  doc["config"] = report.config;
  doc["summary"] = report.summary;
  doc["records"] = std::move(records);
  out << doc.dump(2) << '\n';
}

double parse_number(const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') throw UsageError("not a number: '" + text + "'");
  return v;
}

std::vector<double> parse_list(const std::string& text, std::size_t expected = 0) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(parse_number(item));
  if (values.empty() || (expected != 0 && values.size() != expected)) {
    throw UsageError("expected " + (expected ? std::to_string(expected) : std::string("a list of")) +
                     " comma-separated numbers, got '" + text + "'");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw UsageError("non-finite value in '" + text + "'");
  }
  return values;
}

Point parse_point(const std::string& text) {
  const auto v = parse_list(text, 3);
  return {v[0], v[1], v[2]};
}

AbelianVector parse_vector(const std::string& text) {
  const auto v = parse_list(text, 2);
  return {v[0], v[1]};
}

ExtendedReal parse_extended(const std::string& text) {
  const double v = parse_number(text);
  if (std::isnan(v)) throw UsageError("nu must not be NaN");
  if (std::isinf(v)) return v > 0.0 ? ExtendedReal::plus_infinity() : ExtendedReal::minus_infinity();
  return ExtendedReal::finite(v);
}

std::string extended_text(const ExtendedReal& v) {
  switch (v.kind) {
    case ExtendedReal::Kind::PlusInfinity:
      return "+inf";
    case ExtendedReal::Kind::MinusInfinity:
      return "-inf";
    default:
      return format_double(v.value);
  }
}

MetricSpec make_metric(const std::string& kind, double zeta, double tilt) {
  MetricSpec spec;
  if (kind == "cc") {
    spec = MetricSpec::cc();
  } else if (kind == "r") {
    spec = MetricSpec::riemannian(zeta);
  } else {
    spec = MetricSpec::tilted(tilt);
  }
  spec.validate();
  return spec;
}

json metric_json(const std::string& kind, double zeta, double tilt) {
  json m = json::object();
  m["metric"] = kind;
  if (kind == "r") m["zeta"] = zeta;
  if (kind == "tilted") m["tilt"] = tilt;
  return m;
}

std::string family_name(const Witness& w) {
  if (w.tag == WitnessTag::Degenerate) return "degenerate";
  switch (w.geodesic.family) {
    case GeodesicFamily::Type0:
      return "type0";
    case GeodesicFamily::TypeI:
      return "type1";
    case GeodesicFamily::TypeII:
      return "type2";
  }
  return "unknown";
}

std::string case_name(DetourCase c) {
  switch (c) {
    case DetourCase::Case1:
      return "case1";
    case DetourCase::Case2:
      return "case2";
    case DetourCase::Degenerate:
      return "degenerate";
  }
  return "unknown";
}

// ---- dist

struct DistOptions {
  std::string metric = "cc";
  double zeta = 1.0;
  double tilt = 0.0;
  std::string from = "0,0,0";
  std::string to;
  bool oracle = false;
  int segments = 128;
  int restarts = 4;
};

Report cmd_dist(const DistOptions& o, const Common& common) {
  const MetricSpec spec = make_metric(o.metric, o.zeta, o.tilt);
  const Point from = parse_point(o.from);
  const Point to = parse_point(o.to);
  const Point rel = mul(inverse(from), to);
  const DistanceResult d = distance_from_origin(spec, rel);

  Report r;
  r.command = "dist";
  r.config = metric_json(o.metric, o.zeta, o.tilt);
  r.config["from"] = {from.x, from.y, from.z};
  r.config["to"] = {to.x, to.y, to.z};
  r.columns = {"value", "family", "k", "theta", "T"};
  std::vector<Cell> row{d.value, family_name(d.witness), d.witness.geodesic.k, d.witness.geodesic.theta,
                        d.witness.duration};
  r.summary["value"] = d.value;
  if (o.oracle) {
    if (o.metric == "tilted") throw UsageError("--oracle supports --metric cc and r only");
    r.config["oracle"] = {{"segments", o.segments}, {"restarts", o.restarts}, {"seed", common.seed}};
    OracleOptions options;
    options.restarts = o.restarts;
    std::mt19937_64 rng(common.seed);
    const OracleResult oracle = o.metric == "cc" ? brute_force_cc_distance(rel, o.segments, rng, options)
                                                 : brute_force_r_distance(rel, o.zeta, o.segments, rng, options);
    r.columns.insert(r.columns.end(), {"oracle_value", "oracle_iterations"});
    row.push_back(oracle.value);
    row.push_back(static_cast<long long>(oracle.iterations));
    r.summary["oracle_value"] = oracle.value;
    r.summary["relative_difference"] = d.value == 0.0 ? 0.0 : (oracle.value - d.value) / d.value;
  }
  r.rows.push_back(std::move(row));
  return r;
}

// ---- geodesic

struct GeodesicOptions {
  std::string metric = "cc";
  std::string family = "type2";
  double k = 0.0;
  double theta = 0.0;
  double zeta = 1.0;
  double tmax = 1.0;
  int samples = 101;
};

Report cmd_geodesic(const GeodesicOptions& o) {
  const GeodesicMetric metric = o.metric == "cc" ? GeodesicMetric::CC : GeodesicMetric::R;
  GeodesicParams g;
  g.family = o.family == "type0" ? GeodesicFamily::Type0
                                 : (o.family == "type1" ? GeodesicFamily::TypeI : GeodesicFamily::TypeII);
  g.k = o.family == "type2" ? o.k : 0.0;
  g.theta = o.theta;
  g.metric = metric;
  g.zeta = o.zeta;
  g.validate();
  if (o.samples < 2) throw UsageError("--samples must be at least 2");
  if (!(o.tmax >= 0.0)) throw UsageError("--tmax must be non-negative");

  Report r;
  r.command = "geodesic";
  r.config = {{"metric", o.metric}, {"family", o.family}, {"k", g.k}, {"theta", o.theta},
              {"zeta", o.zeta}, {"tmax", o.tmax}, {"samples", o.samples}};
  r.columns = {"t", "x", "y", "z"};
  for (int i = 0; i < o.samples; ++i) {
    const double t = i == o.samples - 1 ? o.tmax : o.tmax * i / (o.samples - 1);
    const Point p = geodesic_point(g, t);
    r.rows.push_back({t, p.x, p.y, p.z});
  }
  r.summary["speed"] = geodesic_speed(g);
  r.summary["samples"] = o.samples;
  return r;
}

// ---- horofn

struct HorofnOptions {
  std::string kind;
  std::string w = "0,0";
  std::string dir;
  std::string nu = "0";
  bool normalize = false;
  std::string grid = "default";
  bool empirical = false;
  int n = 160;
  std::string metric = "r";
  double zeta = 1.0;
  double tilt = 0.0;
};

std::vector<Point> parse_grid(const std::string& text) {
  if (text == "default") return default_horofunction_grid();
  std::vector<Point> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) grid.push_back(parse_point(item));
  if (grid.empty()) throw UsageError("--grid needs 'default' or x,y,z;x,y,z;...");
  return grid;
}

Report cmd_horofn(const HorofnOptions& o) {
  const std::vector<Point> grid = parse_grid(o.grid);
  Report r;
  r.command = "horofn";
  r.config = {{"kind", o.kind}, {"grid", o.grid}};
  SequenceSpec seq;
  seq.n_max = std::max(o.n, 2);
  if (o.kind == "v") {
    const AbelianVector w = parse_vector(o.w);
    seq.form = VerticalSequence{w, 1.0};
    r.config["w"] = {w.u, w.v};
  } else {
    if (o.dir.empty()) throw UsageError("--kind nv requires --dir");
    AbelianVector dir = parse_vector(o.dir);
    const double length = norm(dir);
    if (o.normalize && length > 0.0) dir = (1.0 / length) * dir;
    if (!(std::abs(norm(dir) - 1.0) <= 1e-12)) throw UsageError("--dir must be a unit vector (or pass --normalize)");
    const ExtendedReal nu = parse_extended(o.nu);
    seq.form = NonVerticalSequence{dir, nu};
    r.config["dir"] = {dir.u, dir.v};
    r.config["nu"] = extended_text(nu);
  }
  const Horofunction h = classify_sequence(seq);
  if (const auto* nv = std::get_if<NonVerticalHorofunction>(&h.form)) r.summary["theta"] = nv->theta;

  r.columns = {"x", "y", "z", "h"};
  std::vector<double> fn;
  if (o.empirical) {
    if (o.n < 1) throw UsageError("--n must be positive");
    const MetricSpec metric = make_metric(o.metric, o.zeta, o.tilt);
    r.config["empirical"] = metric_json(o.metric, o.zeta, o.tilt);
    r.config["empirical"]["n"] = o.n;
    r.columns.push_back("f_n");
    fn = empirical_horofunction(seq, metric, grid, o.n);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double value = horofunction_eval(h, grid[i]);
    std::vector<Cell> row{grid[i].x, grid[i].y, grid[i].z, value};
    if (o.empirical) {
      row.push_back(fn[i]);
      worst = std::max(worst, std::abs(fn[i] - value));
    }
    r.rows.push_back(std::move(row));
  }
  r.summary["n_points"] = static_cast<long long>(grid.size());
  if (o.empirical) r.summary["sup_error"] = worst;
  return r;
}

// ---- verify

struct BoundOptions {
  double zeta = 1.0;
  double margin = 1.0;
  double sign_tol = 1e-9;
  double slack = 1e-6;
};

Report cmd_verify_bound(const BoundOptions& o, const Common& common) {
  if (!(o.zeta > 0.0)) throw UsageError("--zeta must be positive");
  const BoundReport b = verify_bound(o.zeta, default_bound_grid(common.seed), o.margin, {o.sign_tol, o.slack});
  Report r;
  r.command = "verify bound";
  r.config = {{"zeta", o.zeta}, {"margin", o.margin}, {"seed", common.seed}, {"grid", "default"},
              {"sign_tolerance", o.sign_tol}, {"bound_slack", o.slack}};
  r.columns = {"x", "y", "z", "dcc", "dr", "gap", "bound", "pass"};
  for (const BoundRecord& rec : b.records) {
    r.rows.push_back({rec.p.x, rec.p.y, rec.p.z, rec.dcc, rec.dr, rec.gap, rec.bound, rec.pass});
  }
  r.pass = b.all_pass();
  r.summary = {{"n_points", b.n_points}, {"n_skipped", static_cast<long long>(b.skipped.size())},
               {"max_violation", b.max_violation}, {"all_pass", r.pass}};
  return r;
}

struct SharpnessOptions {
  double zeta = 1.0;
  std::string z = "1e4,1e5,1e6,1e7,1e8";
};

Report cmd_verify_sharpness(const SharpnessOptions& o) {
  if (!(o.zeta > 0.0)) throw UsageError("--zeta must be positive");
  const SharpnessReport s = sharpness_vertical(o.zeta, parse_list(o.z));
  Report r;
  r.command = "verify sharpness";
  r.config = {{"zeta", o.zeta}, {"z", parse_list(o.z)}};
  r.columns = {"z", "dcc", "dr", "product", "closed_form", "relative_deviation"};
  for (const SharpnessRecord& rec : s.records) {
    r.rows.push_back({rec.z, rec.dcc, rec.dr, rec.product, rec.closed_form,
                      (rec.product - rec.closed_form) / rec.closed_form});
  }
  r.pass = s.matches_closed_form;
  r.summary = {{"crossover_height", s.crossover_height},
               {"extrapolated_limit", s.extrapolated_limit},
               {"closed_form_limit", s.closed_form_limit},
               {"four_pi_sq_constant", s.four_pi_sq_constant},
               {"matches_closed_form", s.matches_closed_form},
               {"matches_four_pi_sq", s.matches_four_pi_sq},
               {"monotone", s.monotone}};
  return r;
}

struct TiltedOptions {
  double tilt = 0.5;
  std::string R = "10,100,1000,10000";
};

Report cmd_verify_tilted(const TiltedOptions& o) {
  const TiltedGapReport t = tilted_gap(o.tilt, parse_list(o.R));
  Report r;
  r.command = "verify tilted-gap";
  r.config = {{"tilt", o.tilt}, {"R", parse_list(o.R)}};
  r.columns = {"R", "x", "y", "z", "d", "d_tilted", "gap", "within_bound"};
  for (const TiltedGapRecord& rec : t.records) {
    r.rows.push_back({rec.R, rec.p.x, rec.p.y, rec.p.z, rec.d, rec.d_tilted, rec.gap, rec.within_bound});
  }
  const double final_gap = t.records.back().gap;
  const double limit_tolerance = t.target_limit == 0.0 ? 1e-6 : 0.05 * std::abs(t.target_limit);
  const bool near_limit = std::abs(final_gap - t.target_limit) <= limit_tolerance;
  r.pass = t.all_within_bound && near_limit;
  r.summary = {{"target_limit", t.target_limit}, {"final_gap", final_gap},
               {"extrapolated_limit", t.extrapolated_limit}, {"all_within_bound", t.all_within_bound},
               {"final_gap_near_limit", near_limit}};
  return r;
}

struct DetourOptions {
  double zeta = 1.0;
  std::vector<std::string> points{"0,0,100", "3,4,5", "10,0,-30", "1,-2,40", "1,2,0"};
  int points_per_turn = 4096;
};

Report cmd_verify_detour(const DetourOptions& o) {
  if (!(o.zeta > 0.0)) throw UsageError("--zeta must be positive");
  Report r;
  r.command = "verify detour";
  r.config = {{"zeta", o.zeta}, {"points", o.points}, {"points_per_turn", o.points_per_turn}};
  r.columns = {"x", "y", "z", "case", "epsilon", "epsilon_bound", "T", "length", "dcc", "endpoint_error", "pass"};
  bool all = true;
  for (const std::string& text : o.points) {
    const Point p = parse_point(text);
    const DetourCurve c = build_detour_curve(p, o.zeta, o.points_per_turn);
    const double dcc = cc_distance(p).value;
    const double error = std::max({std::abs(c.endpoint.x - p.x), std::abs(c.endpoint.y - p.y),
                                   std::abs(c.endpoint.z - p.z)});
    const double epsilon_bound = c.T > 0.0 ? 2.0 * kPi * kPi / (o.zeta * o.zeta * c.T) : 0.0;
    const bool pass = error <= 1e-8 * std::max(1.0, std::abs(p.z)) &&
                      std::abs(c.length - (c.T + 2.0 * c.epsilon)) <= 1e-8 * std::max(1.0, c.T) &&
                      dcc <= c.length + 1e-6 && c.epsilon <= epsilon_bound + 1e-12;
    all = all && pass;
    r.rows.push_back({p.x, p.y, p.z, case_name(c.case_tag), c.epsilon, epsilon_bound, c.T, c.length, dcc, error,
                      pass});
  }
  r.pass = all;
  r.summary = {{"n_points", static_cast<long long>(o.points.size())}, {"all_pass", all}};
  return r;
}

void add_common(CLI::App* app, Common& common, const std::string& default_format) {
  app->add_option("--format", common.format, "output format (default " + default_format + ")")
      ->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--out", common.out_path, "write the report to PATH instead of stdout");
  app->add_option("--seed", common.seed, "seed for randomized grids and oracles");
}

void add_metric(CLI::App* app, std::string& metric, double& zeta, double& tilt, bool allow_tilted) {
  app->add_option("--metric", metric, "metric kind")
      ->check(CLI::IsMember(allow_tilted ? std::vector<std::string>{"cc", "r", "tilted"}
                                         : std::vector<std::string>{"cc", "r"}));
  app->add_option("--zeta", zeta, "vertical scale of the Riemannian metric");
  if (allow_tilted) app->add_option("--tilt", tilt, "tilt h of the plane span{X, Y + hZ}");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distances, geodesics and horofunctions of the Heisenberg group", "heisgeo"};
  app.require_subcommand(1);
  Common common;

  DistOptions dist;
  auto* dist_cmd = app.add_subcommand("dist", "distance between two points");
  add_metric(dist_cmd, dist.metric, dist.zeta, dist.tilt, true);
  dist_cmd->add_option("--from", dist.from, "x,y,z");
  dist_cmd->add_option("--to", dist.to, "x,y,z")->required();
  dist_cmd->add_flag("--oracle", dist.oracle, "also run the brute-force polyline oracle");
  dist_cmd->add_option("--segments", dist.segments, "oracle polyline segments");
  dist_cmd->add_option("--restarts", dist.restarts, "oracle restarts");
  add_common(dist_cmd, common, "json");

  GeodesicOptions geo;
  auto* geo_cmd = app.add_subcommand("geodesic", "sample a closed-form geodesic");
  geo_cmd->add_option("--metric", geo.metric)->check(CLI::IsMember({"cc", "r"}));
  geo_cmd->add_option("--family", geo.family)->check(CLI::IsMember({"type0", "type1", "type2"}));
  geo_cmd->add_option("--k", geo.k);
  geo_cmd->add_option("--theta", geo.theta);
  geo_cmd->add_option("--zeta", geo.zeta);
  geo_cmd->add_option("--tmax", geo.tmax)->required();
  geo_cmd->add_option("--samples", geo.samples);
  add_common(geo_cmd, common, "csv");

  HorofnOptions horo;
  auto* horo_cmd = app.add_subcommand("horofn", "evaluate a horofunction on a grid");
  horo_cmd->add_option("--kind", horo.kind)->required()->check(CLI::IsMember({"v", "nv"}));
  horo_cmd->add_option("--w", horo.w, "w_inf for --kind v");
  horo_cmd->add_option("--dir", horo.dir, "unit direction for --kind nv");
  horo_cmd->add_option("--nu", horo.nu, "quadratic rate, or +inf/-inf");
  horo_cmd->add_flag("--normalize", horo.normalize, "normalize --dir");
  horo_cmd->add_option("--grid", horo.grid, "'default' or x,y,z;x,y,z;...");
  horo_cmd->add_flag("--empirical", horo.empirical, "also emit f_n from the exact distance");
  horo_cmd->add_option("--n", horo.n, "sequence index for --empirical");
  add_metric(horo_cmd, horo.metric, horo.zeta, horo.tilt, true);
  add_common(horo_cmd, common, "json");

  auto* verify = app.add_subcommand("verify", "run an experiment harness");
  verify->require_subcommand(1);

  BoundOptions bound;
  auto* bound_cmd = verify->add_subcommand("bound", "cc versus Riemannian distance bound");
  bound_cmd->add_option("--zeta", bound.zeta);
  bound_cmd->add_option("--margin", bound.margin);
  bound_cmd->add_option("--sign-tol", bound.sign_tol);
  bound_cmd->add_option("--slack", bound.slack);
  add_common(bound_cmd, common, "json");

  SharpnessOptions sharp;
  auto* sharp_cmd = verify->add_subcommand("sharpness", "vertical-axis sharpness product");
  sharp_cmd->add_option("--zeta", sharp.zeta);
  sharp_cmd->add_option("--z", sharp.z, "comma-separated heights");
  add_common(sharp_cmd, common, "json");

  TiltedOptions tilted;
  auto* tilted_cmd = verify->add_subcommand("tilted-gap", "standard versus tilted cc distance");
  tilted_cmd->add_option("--tilt", tilted.tilt);
  tilted_cmd->add_option("--R", tilted.R, "comma-separated radii");
  add_common(tilted_cmd, common, "json");

  DetourOptions detour;
  auto* detour_cmd = verify->add_subcommand("detour", "detour competitor construction");
  detour_cmd->add_option("--zeta", detour.zeta);
  detour_cmd->add_option("--point", detour.points, "x,y,z (repeatable)");
  detour_cmd->add_option("--points-per-turn", detour.points_per_turn);
  add_common(detour_cmd, common, "json");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (const char* env = std::getenv("HEISGEO_SEED")) {
      try {
        std::size_t used = 0;
        common.seed = std::stoull(env, &used);
        if (env[used] != '\0') throw std::invalid_argument(env);
      } catch (const std::logic_error&) {
        throw UsageError(std::string("HEISGEO_SEED is not an unsigned integer: '") + env + "'");
      }
    }
    Report report;
    if (dist_cmd->parsed()) {
      report = cmd_dist(dist, common);
    } else if (geo_cmd->parsed()) {
      report = cmd_geodesic(geo);
    } else if (horo_cmd->parsed()) {
      report = cmd_horofn(horo);
    } else if (bound_cmd->parsed()) {
      report = cmd_verify_bound(bound, common);
    } else if (sharp_cmd->parsed()) {
      report = cmd_verify_sharpness(sharp);
    } else if (tilted_cmd->parsed()) {
      report = cmd_verify_tilted(tilted);
    } else {
      report = cmd_verify_detour(detour);
    }

    if (common.format.empty()) common.format = geo_cmd->parsed() ? "csv" : "json";
    std::ostringstream buffer;
    emit(report, common.format, buffer);
    if (common.out_path.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(common.out_path, std::ios::binary);
      file << buffer.str();
      if (!file) throw UsageError("cannot write " + common.out_path);
    }
    return report.pass ? kExitPass : kExitFailure;
  } catch (const UsageError& e) {
    err << "heisgeo: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NonConvergenceError& e) {
    err << "heisgeo: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::invalid_argument& e) {
    err << "heisgeo: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "heisgeo: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "heisgeo: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace heisgeo::cli
