#include "reeb/cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "reeb/besse_spectra.hpp"
#include "reeb/body_io.hpp"
#include "reeb/clarke.hpp"
#include "reeb/errors.hpp"
#include "reeb/reeb_flow.hpp"

namespace reeb {
namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string body_path;
  std::string format = "text";
  std::string output;
  std::uint64_t seed = 1;
  std::string cutoff;
  std::string horizon;
  int count = 10;
  std::optional<int> dim;
  int modes = 64;
  int restarts = 16;
  int max_iterations = 5000;
  int coord = 0;
  int iterate = 1;
  std::string orbit_path;
  std::string trajectory_path;
  int trajectory_samples = 0;
  bool approximate = false;
  bool numeric = false;
  bool skip_index = false;
};

// Usage errors detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ConvexBody require_body(const RunConfig& cfg) {
  if (cfg.body_path.empty()) throw UsageError("--body is required");
  return load_body(cfg.body_path);
}

Json body_json(const ConvexBody& body) { return Json::parse(body_to_json(body).dump()); }

Json header(const std::string& command, const RunConfig& cfg) {
  Json j;
  j["command"] = command;
  j["seed"] = cfg.seed;
  return j;
}

// Ellipsoid parameters in float mode, or UnsupportedBody.
std::vector<double> float_ellipsoid(const ConvexBody& body, const RunConfig& cfg) {
  if (body.kind() != BodyKind::Ellipsoid) {
    throw Error(ErrorKind::UnsupportedBody, body.describe() + " is not an ellipsoid");
  }
  if (!cfg.approximate) {
    throw Error(ErrorKind::UnsupportedBody,
                body.describe() + " has inexact parameters; pass --approximate for float-mode results");
  }
  return body.params();
}

Json cmd_spectrum(const RunConfig& cfg) {
  Json j = header("spectrum", cfg);
  const Rational cutoff = parse_rational(cfg.cutoff);
  j["cutoff"] = format_rational(cutoff);
  j["rows"] = Json::array();
  if (cfg.body_path.empty() && cutoff <= 0) {
    j["body"] = nullptr;
    j["exact"] = true;
    return j;
  }
  const ConvexBody body = require_body(cfg);
  j["body"] = body_json(body);
  if (body.is_rational_ellipsoid()) {
    j["exact"] = true;
    for (const auto& e : action_spectrum(RationalEllipsoid::from_body(body), cutoff)) {
      j["rows"].push_back({{"sigma", format_rational(e.sigma)},
                           {"multiplicity", e.multiplicity},
                           {"stratum_dim", e.stratum_dim},
                           {"divisor_coords", e.divisor_coords}});
    }
  } else {
    const std::vector<double> a = float_ellipsoid(body, cfg);
    j["exact"] = false;
    for (const auto& e : approximate_spectrum(a, to_double(cutoff))) {
      j["rows"].push_back({{"sigma", e.sigma},
                           {"multiplicity", e.multiplicity},
                           {"stratum_dim", e.stratum_dim},
                           {"divisor_coords", e.divisor_coords}});
    }
  }
  return j;
}

Json cmd_invariants(const RunConfig& cfg) {
  Json j = header("invariants", cfg);
  const ConvexBody body = require_body(cfg);
  if (cfg.count < 1) throw UsageError("-m must be positive");
  j["body"] = body_json(body);
  j["count"] = cfg.count;
  j["values"] = Json::array();
  if (body.is_rational_ellipsoid()) {
    j["exact"] = true;
    for (const Rational& v : spectral_invariants(RationalEllipsoid::from_body(body), cfg.count).values) {
      j["values"].push_back(format_rational(v));
    }
  } else {
    j["exact"] = false;
    for (double v : approximate_invariants(float_ellipsoid(body, cfg), cfg.count)) j["values"].push_back(v);
  }
  return j;
}

Json cmd_strata(const RunConfig& cfg) {
  Json j = header("strata", cfg);
  const ConvexBody body = require_body(cfg);
  j["body"] = body_json(body);
  const RationalEllipsoid ell = RationalEllipsoid::from_body(body);
  j["tau"] = format_rational(ell.tau());
  j["rows"] = Json::array();
  for (const auto& s : strata(ell)) {
    j["rows"].push_back({{"k", s.k.str()}, {"period", format_rational(s.period)}, {"coords", s.coords}, {"dim", s.dim}});
  }
  return j;
}

Json cmd_ladder(const RunConfig& cfg) {
  Json j = header("ladder", cfg);
  const ConvexBody body = require_body(cfg);
  j["body"] = body_json(body);
  const RationalEllipsoid ell = RationalEllipsoid::from_body(body);
  const Rational horizon = parse_rational(cfg.horizon);
  j["horizon"] = format_rational(horizon);
  j["rows"] = Json::array();
  for (const auto& r : iota_ladder(ell, horizon)) {
    j["rows"].push_back({{"sigma", format_rational(r.sigma)}, {"iota0", r.iota0}, {"iota1", r.iota1}});
  }
  return j;
}

Json cmd_besse(const RunConfig& cfg) {
  Json j = header("besse", cfg);
  const ConvexBody body = require_body(cfg);
  const int n = cfg.dim.value_or(body.dim());
  if (n < 1) throw UsageError("-n must be positive");
  j["body"] = body_json(body);
  j["n"] = n;
  j["count"] = cfg.count;
  std::optional<int> found;
  if (body.is_rational_ellipsoid()) {
    j["exact"] = true;
    found = besse_criterion(RationalEllipsoid::from_body(body), n, cfg.count);
  } else {
    j["exact"] = false;
    found = approximate_besse_criterion(approximate_invariants(float_ellipsoid(body, cfg), cfg.count), n);
  }
  j["besse_index"] = found ? Json(*found) : Json(nullptr);
  return j;
}

Json point_json(const Vec& p) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) a.push_back(p[i]);
  return a;
}

Json orbit_json(const OrbitRecord& orbit) {
  Json j;
  j["period"] = orbit.period;
  j["index"] = orbit.index ? Json(*orbit.index) : Json(nullptr);
  j["nullity"] = orbit.nullity ? Json(*orbit.nullity) : Json(nullptr);
  j["residual"] = orbit.residual;
  j["energy_error"] = orbit.energy_error;
  j["initial_point"] = point_json(orbit.initial_point);
  return j;
}

void write_orbit_csv(const std::string& path, const OrbitRecord& orbit) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  Trajectory t;
  t.times = orbit.sample_times;
  t.points = orbit.samples;
  write_trajectory_csv(f, t);
}

Json cmd_systole(const RunConfig& cfg) {
  Json j = header("systole", cfg);
  const ConvexBody body = require_body(cfg);
  SystoleOptions opts;
  opts.mode_cutoff = cfg.modes;
  opts.restarts = cfg.restarts;
  opts.seed = cfg.seed;
  opts.max_iterations = cfg.max_iterations;
  opts.compute_index = !cfg.skip_index;
  if (opts.mode_cutoff < 8) throw UsageError("-N must be at least 8");
  if (opts.restarts < 1) throw UsageError("--restarts must be positive");
  const SystoleResult r = minimize_systole(body, opts);
  j["body"] = body_json(body);
  j["modes"] = cfg.modes;
  j["restarts"] = cfg.restarts;
  j["c0"] = r.c0;
  const Json orbit = orbit_json(r.orbit);
  for (auto& [k, v] : orbit.items()) j[k] = v;
  j["best_restart"] = r.best_restart;
  j["best_gradient_norm"] = r.restarts[r.best_restart].gradient_norm;
  if (!cfg.trajectory_path.empty()) write_orbit_csv(cfg.trajectory_path, r.orbit);
  return j;
}

OrbitRecord orbit_from_json(const std::string& path, const ConvexBody& body) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open orbit file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("invalid orbit JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("period") || !j.contains("initial_point")) {
    throw Error(ErrorKind::ParseError, "orbit record needs 'period' and 'initial_point'");
  }
  OrbitRecord orbit;
  try {
    orbit.period = j.at("period").get<double>();
    const auto pts = j.at("initial_point").get<std::vector<double>>();
    if (static_cast<int>(pts.size()) != 2 * body.dim()) {
      throw Error(ErrorKind::ParseError, "initial_point has the wrong dimension");
    }
    orbit.initial_point = Eigen::Map<const Vec>(pts.data(), static_cast<Eigen::Index>(pts.size()));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed orbit record: ") + e.what());
  }
  if (!(orbit.period > 0.0)) throw Error(ErrorKind::ParseError, "orbit period must be positive");
  return orbit;
}

Json cmd_orbit_index(const RunConfig& cfg) {
  Json j = header("orbit-index", cfg);
  const ConvexBody body = require_body(cfg);
  j["body"] = body_json(body);
  const bool from_file = !cfg.orbit_path.empty();
  if (from_file == (cfg.coord != 0)) throw UsageError("give exactly one of --orbit or --coord");

  if (!from_file && cfg.iterate < 1) throw UsageError("--iterate must be positive");
  if (!from_file && (cfg.coord < 1 || cfg.coord > body.dim())) throw UsageError("--coord out of range");

  if (!from_file && body.is_rational_ellipsoid() && !cfg.numeric) {
    const RationalEllipsoid ell = RationalEllipsoid::from_body(body);
    const IndexPair p = ellipsoid_orbit_index(ell, cfg.coord, cfg.iterate);
    j["method"] = "exact";
    j["coord"] = cfg.coord;
    j["iterate"] = cfg.iterate;
    j["period"] = format_rational(cfg.iterate * ell.params()[cfg.coord - 1]);
    j["index"] = p.index;
    j["nullity"] = p.nullity;
    return j;
  }

  OrbitRecord orbit;
  if (from_file) {
    orbit = orbit_from_json(cfg.orbit_path, body);
    j["orbit"] = cfg.orbit_path;
  } else {
    // The coordinate circles are orbits of any ellipsoid; other families are
    // degenerate on the coordinate planes.
    if (body.kind() != BodyKind::Ellipsoid) {
      throw Error(ErrorKind::UnsupportedBody, "--coord needs an ellipsoid; use --orbit for " + body.describe());
    }
    const int i = cfg.coord - 1;
    const double a = body.params()[i];
    orbit.period = cfg.iterate * a;
    orbit.initial_point = Vec::Zero(2 * body.dim());
    orbit.initial_point[2 * i] = std::sqrt(a / std::numbers::pi);
    j["coord"] = cfg.coord;
    j["iterate"] = cfg.iterate;
  }
  const IndexResult r = orbit_index(body, orbit);
  j["method"] = "numeric";
  j["period"] = orbit.period;
  j["index"] = r.index;
  j["nullity"] = r.nullity;
  j["crossings"] = Json::array();
  for (const auto& c : r.crossings) {
    j["crossings"].push_back({{"t", c.t}, {"kernel_dim", c.kernel_dim}, {"refined", c.refined}});
  }
  return j;
}

// Text and CSV are rendered from the JSON record, so every number printed
// is the JSON token itself.

std::string token(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) s += (s.empty() ? "" : " ") + token(e);
    return "{" + s + "}";
  }
  return v.dump();
}

std::string describe_body(const Json& j) {
  if (j.is_null()) return "none";
  return body_from_json(nlohmann::json::parse(j.dump())).describe();
}

void render_table(std::ostream& os, const Json& rows, const std::vector<std::string>& columns) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back(columns);
  for (const auto& r : rows) {
    std::vector<std::string> line;
    for (const auto& c : columns) line.push_back(token(r.at(c)));
    cells.push_back(std::move(line));
  }
  std::vector<std::size_t> width(columns.size(), 0);
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  for (const auto& line : cells) {
    std::string s;
    for (std::size_t i = 0; i < line.size(); ++i) {
      s += line[i];
      if (i + 1 < line.size()) s += std::string(width[i] - line[i].size() + 2, ' ');
    }
    os << s << "\n";
  }
}

std::vector<std::string> table_columns(const std::string& command) {
  if (command == "spectrum") return {"sigma", "multiplicity", "stratum_dim", "divisor_coords"};
  if (command == "strata") return {"k", "period", "coords", "dim"};
  if (command == "ladder") return {"sigma", "iota0", "iota1"};
  return {};
}

void render_text(std::ostream& os, const Json& j) {
  const std::string command = j.at("command");
  os << "body: " << describe_body(j.at("body")) << "\n";
  if (command == "spectrum" || command == "strata" || command == "ladder") {
    if (j.contains("tau")) os << "tau: " << token(j["tau"]) << "\n";
    render_table(os, j.at("rows"), table_columns(command));
  } else if (command == "invariants") {
    std::string s;
    for (const auto& v : j.at("values")) s += (s.empty() ? "" : ", ") + token(v);
    os << s << "\n";
  } else if (command == "besse") {
    if (j.at("besse_index").is_null()) {
      os << "no Besse coincidence within the first " << token(j.at("count")) << " invariants\n";
    } else {
      os << "Besse-consistent at i=" << token(j.at("besse_index")) << "\n";
    }
  } else if (command == "systole" || command == "orbit-index") {
    if (command == "orbit-index") os << "(" << token(j.at("index")) << ", " << token(j.at("nullity")) << ")\n";
    for (auto& [k, v] : j.items()) {
      if (k == "command" || k == "body" || k == "seed" || k == "crossings") continue;
      os << k << ": " << token(v) << "\n";
    }
  }
  os << "seed: " << token(j.at("seed")) << "\n";
}

void render_csv(std::ostream& os, const Json& j) {
  const std::vector<std::string> columns = table_columns(j.at("command"));
  if (!columns.empty() || j.contains("values")) os << "# seed=" << token(j.at("seed")) << "\n";
  if (!columns.empty()) {
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << "\n";
    for (const auto& r : j.at("rows")) {
      for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << token(r.at(columns[i]));
      os << "\n";
    }
    return;
  }
  if (j.contains("values")) {
    os << "i,value\n";
    int i = 0;
    for (const auto& v : j.at("values")) os << i++ << "," << token(v) << "\n";
    return;
  }
  os << "key,value\n";
  for (auto& [k, v] : j.items()) {
    if (k == "body" || k == "crossings") continue;
    os << k << "," << token(v) << "\n";
  }
}

void emit(const Json& j, const RunConfig& cfg, std::ostream& out) {
  std::ostringstream os;
  if (cfg.format == "json") os << j.dump(2) << "\n";
  else if (cfg.format == "csv") render_csv(os, j);
  else render_text(os, j);
  if (cfg.output.empty()) {
    out << os.str();
    return;
  }
  std::ofstream f(cfg.output);
  if (!f) throw UsageError("cannot write " + cfg.output);
  f << os.str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Closed Reeb orbits, systoles and ellipsoid spectra of convex spheres"};
  app.name("reebkit");
  app.require_subcommand(1);

  auto common = [&cfg](CLI::App* sub, bool body_required) {
    auto* opt = sub->add_option("--body", cfg.body_path, "body specification (JSON)");
    if (body_required) opt->required();
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--output", cfg.output, "write to this file instead of standard output");
    sub->add_option("--seed", cfg.seed, "random seed, recorded in the output");
  };

  auto* spectrum = app.add_subcommand("spectrum", "action spectrum up to a cutoff");
  common(spectrum, false);
  spectrum->add_option("--cutoff", cfg.cutoff, "largest action (rational)")->required();
  spectrum->add_flag("--approximate", cfg.approximate, "allow float-mode ellipsoids");

  auto* invariants = app.add_subcommand("invariants", "first m spectral invariants");
  common(invariants, true);
  invariants->add_option("-m", cfg.count, "number of invariants");
  invariants->add_flag("--approximate", cfg.approximate, "allow float-mode ellipsoids");

  auto* strata_cmd = app.add_subcommand("strata", "strata of the Reeb flow");
  common(strata_cmd, true);

  auto* ladder = app.add_subcommand("ladder", "index ladder (sigma, iota_0, iota_1)");
  common(ladder, true);
  ladder->add_option("--horizon", cfg.horizon, "largest action (rational)")->required();

  auto* besse = app.add_subcommand("besse", "Besse criterion c_i = c_{i+n-1}");
  common(besse, true);
  besse->add_option("-n", cfg.dim, "complex dimension (default: the body's)");
  besse->add_option("-m", cfg.count, "number of invariants to search");
  besse->add_flag("--approximate", cfg.approximate, "allow float-mode ellipsoids");

  auto* systole = app.add_subcommand("systole", "minimal action c0 by Clarke dual minimization");
  common(systole, true);
  systole->add_option("-N", cfg.modes, "Fourier mode cutoff");
  systole->add_option("--restarts", cfg.restarts, "random restarts");
  systole->add_option("--max-iterations", cfg.max_iterations, "iteration cap per restart");
  systole->add_option("--trajectory", cfg.trajectory_path, "write the orbit samples as CSV");
  systole->add_flag("--no-index", cfg.skip_index, "skip the Morse index computation");

  auto* orbit_cmd = app.add_subcommand("orbit-index", "Morse index and nullity of a closed orbit");
  common(orbit_cmd, true);
  orbit_cmd->add_option("--coord", cfg.coord, "coordinate plane of an ellipsoid orbit (1-based)");
  orbit_cmd->add_option("--iterate", cfg.iterate, "iterate of the simple orbit");
  orbit_cmd->add_option("--orbit", cfg.orbit_path, "stored orbit record (JSON from systole)");
  orbit_cmd->add_flag("--numeric", cfg.numeric, "integrate the linearized flow instead of the closed form");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Json result;
    if (*spectrum) result = cmd_spectrum(cfg);
    else if (*invariants) result = cmd_invariants(cfg);
    else if (*strata_cmd) result = cmd_strata(cfg);
    else if (*ladder) result = cmd_ladder(cfg);
    else if (*besse) result = cmd_besse(cfg);
    else if (*systole) result = cmd_systole(cfg);
    else result = cmd_orbit_index(cfg);
    emit(result, cfg, out);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NonConvergenceError& e) {
    err << "error: " << e.what() << "\n"
        << std::setprecision(17) << "best Q value: " << e.best_value() << "\n"
        << "gradient norm: " << e.gradient_norm() << "\n";
    return kExitNonConvergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::ParseError:
      case ErrorKind::InvalidBody:
        return kExitUsage;
      case ErrorKind::UnsupportedBody:
        return kExitUnsupported;
      default:
        return kExitNonConvergence;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace reeb
