#include "moving_well/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace moving_well::cli {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError("'" + where + "' must be an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items())
    if (!keys.contains(key)) throw ConfigError("unknown key '" + where + "." + key + "'");
}

template <typename T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("bad value for '" + where + "." + key + "'");
  }
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

std::string kind_name(StateKind k) {
  switch (k) {
    case StateKind::mode:
      return "mode";
    case StateKind::box:
      return "box";
    case StateKind::gaussian:
      return "gaussian";
    case StateKind::csv:
      return "csv";
  }
  return "mode";
}

StateKind parse_kind(const std::string& s) {
  if (s == "mode") return StateKind::mode;
  if (s == "box") return StateKind::box;
  if (s == "gaussian") return StateKind::gaussian;
  if (s == "csv") return StateKind::csv;
  throw ConfigError("unknown state kind '" + s + "'");
}

void validate(const RunConfig& c) {
  const auto& g = c.geometry;
  require(finite_positive(g.a), "geometry.a must be positive");
  require(finite_positive(g.hbar) && finite_positive(g.mass), "geometry.hbar and geometry.mass must be positive");
  require(std::isfinite(g.u_left) && std::isfinite(g.u_right), "wall velocities must be finite");

  const auto& s = c.state;
  require(s.n >= 1, "state.n must be >= 1");
  require(s.n_max >= 1, "state.n_max must be >= 1");
  require(finite_positive(s.quad_tol), "state.quad_tol must be positive");
  if (s.kind == StateKind::gaussian) require(finite_positive(s.width), "state.width must be positive");
  if (s.kind == StateKind::csv) require(!s.path.empty(), "state.path is required for csv states");

  require(c.solver.nx >= 8, "solver.nx must be >= 8");
  require(finite_positive(c.solver.dt), "solver.dt must be positive");
  require(c.solver.fidelity_floor >= 0.0 && c.solver.fidelity_floor <= 1.0, "solver.fidelity_floor must be in [0, 1]");

  const auto& o = c.output;
  require(!o.directory.empty(), "output.directory must not be empty");
  require(!o.times.empty(), "output.times must not be empty");
  require(std::is_sorted(o.times.begin(), o.times.end()), "output.times must be sorted");
  require(o.times.front() >= 0.0, "output.times must be non-negative");
  require(o.grid_points >= 16, "output.grid_points must be >= 16");
  for (const auto& f : o.formats) require(f == "csv" || f == "json" || f == "svg", "unknown output format '" + f + "'");

  const auto& v = c.verify;
  require(!v.modes.empty(), "verify.modes must not be empty");
  for (int n : v.modes) require(n >= 1, "verify.modes entries must be >= 1");
  require(v.n_max >= 1 && v.norm_modes >= 1, "verify.n_max and verify.norm_modes must be >= 1");
  require(v.probe_count >= 1 && v.boundary_times >= 1 && v.norm_times >= 1, "verify counts must be >= 1");
  require(finite_positive(v.t_max) && finite_positive(v.boundary_t_max), "verify time windows must be positive");
  require(v.spacings.size() >= 3, "verify.spacings needs at least three entries");
  for (std::size_t i = 0; i < v.spacings.size(); ++i) {
    require(finite_positive(v.spacings[i]), "verify.spacings must be positive");
    if (i > 0) require(v.spacings[i] < v.spacings[i - 1], "verify.spacings must strictly decrease");
  }
  for (double th : {v.residual_threshold, v.boundary_threshold, v.orthonormality_threshold, v.norm_threshold,
                    v.phase_threshold, v.tau_threshold})
    require(th >= 0.0 && std::isfinite(th), "verify thresholds must be finite and non-negative");
  require(v.order_min <= v.order_max, "verify.order_min must not exceed verify.order_max");
}

}  // namespace

bool OutputBlock::wants(const std::string& format) const {
  return std::find(formats.begin(), formats.end(), format) != formats.end();
}

Geometry RunConfig::make_geometry() const {
  return Geometry(geometry.a, geometry.u_left, geometry.u_right, Constants{geometry.hbar, geometry.mass});
}

RunConfig parse_config(const json& doc) {
  RunConfig c;
  reject_unknown(doc, "config", {"geometry", "state", "solver", "output", "verify"});

  if (doc.contains("geometry")) {
    const json& g = doc.at("geometry");
    reject_unknown(g, "geometry", {"a", "u_left", "u_right", "hbar", "mass"});
    read(g, "a", c.geometry.a, "geometry");
    read(g, "u_left", c.geometry.u_left, "geometry");
    read(g, "u_right", c.geometry.u_right, "geometry");
    read(g, "hbar", c.geometry.hbar, "geometry");
    read(g, "mass", c.geometry.mass, "geometry");
  }
  if (doc.contains("state")) {
    const json& s = doc.at("state");
    reject_unknown(s, "state", {"kind", "n", "center", "width", "momentum", "path", "n_max", "quad_tol"});
    std::string kind = kind_name(c.state.kind);
    read(s, "kind", kind, "state");
    c.state.kind = parse_kind(kind);
    read(s, "n", c.state.n, "state");
    read(s, "center", c.state.center, "state");
    read(s, "width", c.state.width, "state");
    read(s, "momentum", c.state.momentum, "state");
    read(s, "path", c.state.path, "state");
    read(s, "n_max", c.state.n_max, "state");
    read(s, "quad_tol", c.state.quad_tol, "state");
  }
  if (doc.contains("solver")) {
    const json& s = doc.at("solver");
    reject_unknown(s, "solver", {"nx", "dt", "fidelity_floor"});
    read(s, "nx", c.solver.nx, "solver");
    read(s, "dt", c.solver.dt, "solver");
    read(s, "fidelity_floor", c.solver.fidelity_floor, "solver");
  }
  if (doc.contains("output")) {
    const json& o = doc.at("output");
    reject_unknown(o, "output", {"directory", "times", "grid_points", "formats"});
    read(o, "directory", c.output.directory, "output");
    read(o, "times", c.output.times, "output");
    read(o, "grid_points", c.output.grid_points, "output");
    read(o, "formats", c.output.formats, "output");
  }
  if (doc.contains("verify")) {
    const json& v = doc.at("verify");
    reject_unknown(v, "verify",
                   {"residual_threshold", "boundary_threshold", "orthonormality_threshold", "norm_threshold",
                    "phase_threshold", "tau_threshold", "order_min", "order_max", "modes", "n_max", "times", "norm_modes",
                    "norm_times", "probe_count", "boundary_times", "t_max", "boundary_t_max", "spacings", "seed"});
    auto& b = c.verify;
    read(v, "residual_threshold", b.residual_threshold, "verify");
    read(v, "boundary_threshold", b.boundary_threshold, "verify");
    read(v, "orthonormality_threshold", b.orthonormality_threshold, "verify");
    read(v, "norm_threshold", b.norm_threshold, "verify");
    read(v, "phase_threshold", b.phase_threshold, "verify");
    read(v, "tau_threshold", b.tau_threshold, "verify");
    read(v, "order_min", b.order_min, "verify");
    read(v, "order_max", b.order_max, "verify");
    read(v, "modes", b.modes, "verify");
    read(v, "n_max", b.n_max, "verify");
    read(v, "times", b.times, "verify");
    read(v, "norm_modes", b.norm_modes, "verify");
    read(v, "norm_times", b.norm_times, "verify");
    read(v, "probe_count", b.probe_count, "verify");
    read(v, "boundary_times", b.boundary_times, "verify");
    read(v, "t_max", b.t_max, "verify");
    read(v, "boundary_t_max", b.boundary_t_max, "verify");
    read(v, "spacings", b.spacings, "verify");
    read(v, "seed", b.seed, "verify");
  }
  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig& c) {
  json doc;
  doc["geometry"] = {{"a", c.geometry.a},
                     {"u_left", c.geometry.u_left},
                     {"u_right", c.geometry.u_right},
                     {"hbar", c.geometry.hbar},
                     {"mass", c.geometry.mass}};
  doc["state"] = {{"kind", kind_name(c.state.kind)}, {"n", c.state.n},           {"center", c.state.center},
                  {"width", c.state.width},          {"momentum", c.state.momentum}, {"path", c.state.path},
                  {"n_max", c.state.n_max},          {"quad_tol", c.state.quad_tol}};
  doc["solver"] = {{"nx", c.solver.nx}, {"dt", c.solver.dt}, {"fidelity_floor", c.solver.fidelity_floor}};
  doc["output"] = {{"directory", c.output.directory},
                   {"times", c.output.times},
                   {"grid_points", c.output.grid_points},
                   {"formats", c.output.formats}};
  const auto& v = c.verify;
  doc["verify"] = {{"residual_threshold", v.residual_threshold},
                   {"boundary_threshold", v.boundary_threshold},
                   {"orthonormality_threshold", v.orthonormality_threshold},
                   {"norm_threshold", v.norm_threshold},
                   {"phase_threshold", v.phase_threshold},
                   {"tau_threshold", v.tau_threshold},
                   {"order_min", v.order_min},
                   {"order_max", v.order_max},
                   {"modes", v.modes},
                   {"n_max", v.n_max},
                   {"times", v.times},
                   {"norm_modes", v.norm_modes},
                   {"norm_times", v.norm_times},
                   {"probe_count", v.probe_count},
                   {"boundary_times", v.boundary_times},
                   {"t_max", v.t_max},
                   {"boundary_t_max", v.boundary_t_max},
                   {"spacings", v.spacings},
                   {"seed", v.seed}};
  return doc;
}

}  // namespace moving_well::cli
