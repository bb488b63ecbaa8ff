#include "moving_well/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <ostream>
#include <random>

#include "moving_well/errors.hpp"
#include "moving_well/fdm.hpp"
#include "moving_well/initial_states.hpp"
#include "moving_well/modes.hpp"
#include "moving_well/output.hpp"
#include "moving_well/quadrature.hpp"
#include "moving_well/spectral.hpp"
#include "moving_well/verify.hpp"

namespace moving_well::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string out_path(const RunConfig& c, const std::string& name) { return (fs::path(c.output.directory) / name).string(); }

void prepare_output(const RunConfig& c) {
  std::error_code ec;
  fs::create_directories(c.output.directory, ec);
  if (ec) throw IoError("cannot create output directory '" + c.output.directory + "': " + ec.message());
  write_text(out_path(c, "resolved_config.json"), to_json(c).dump(2) + "\n");
}

void require_times(const Geometry& g, const std::vector<double>& times) {
  for (double t : times) g.require_valid(t);
}

std::string snapshot_name(const std::string& stem, std::size_t index, const std::string& ext) {
  return stem + "_t" + std::to_string(index) + "." + ext;
}

struct InitialState {
  spectral::StateFunction function;
  std::vector<double> breakpoints;
};

InitialState make_initial_state(const RunConfig& c, const Geometry& g) {
  const auto& s = c.state;
  switch (s.kind) {
    case StateKind::mode:
      return {spectral::mode_state(g, s.n), {}};
    case StateKind::box:
      return {spectral::box_state(g, s.n), {}};
    case StateKind::gaussian:
      return {spectral::gaussian_packet(s.center, s.width, s.momentum, g.hbar()), {}};
    case StateKind::csv: {
      auto table = spectral::load_csv_state(s.path);
      auto breaks = table.breakpoints();
      return {std::move(table), std::move(breaks)};
    }
  }
  throw ConfigError("unsupported state kind");
}

json check(const std::string& name, double value, double threshold, bool pass) {
  return {{"name", name}, {"value", value}, {"threshold", threshold}, {"pass", pass}};
}

json residual_json(const verify::ResidualReport& r) {
  return {{"dx", r.dx},
          {"dt", r.dt},
          {"max_residual", r.max_residual},
          {"l2_residual", r.l2_residual},
          {"reference_scale", r.reference_scale},
          {"relative_max", r.relative_max}};
}

std::vector<double> random_times(std::uint64_t seed, std::size_t count, double t_max) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> out(count);
  for (double& t : out) t = t_max * unit(rng);
  return out;
}

}  // namespace

Method parse_method(const std::string& name) {
  if (name == "analytic") return Method::analytic;
  if (name == "fdm") return Method::fdm;
  if (name == "both") return Method::both;
  throw ConfigError("unknown method '" + name + "' (expected analytic, fdm or both)");
}

void cmd_modes(const RunConfig& c) {
  const Geometry g = c.make_geometry();
  const auto& times = c.output.times;
  require_times(g, times);
  prepare_output(c);

  CsvTable table({"n", "k", "E_n", "t", "L", "tau", "log_amplitude"});
  for (int n = 1; n <= c.state.n_max; ++n) {
    const Mode mode = make_mode(g, n);
    for (double t : times)
      table.add_row({double(n), mode.k, mode.energy, t, g.scale_factor(t), time_phase_integral(g, t),
                     gauge_phase(g, t).log_amplitude});
  }
  table.write(out_path(c, "modes.csv"));

  const Mode mode = make_mode(g, c.state.n);
  const std::string stem = "density_mode" + std::to_string(c.state.n);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    const Eigen::VectorXd xs = spectral::well_grid(g, t, c.output.grid_points);
    const Eigen::VectorXcd values = eval_mode_grid<double>(mode, xs, t);
    if (c.output.wants("csv")) density_table(xs, values).write(out_path(c, snapshot_name(stem, i, "csv")));
    if (c.output.wants("svg"))
      write_text(out_path(c, snapshot_name(stem, i, "svg")),
                 density_svg(xs, values.cwiseAbs2(), g.wall_positions(t),
                             "|psi_" + std::to_string(c.state.n) + "|^2 at t=" + format_double(t)));
  }
}

EvolveOutcome cmd_evolve(const RunConfig& c, Method method) {
  const Geometry g = c.make_geometry();
  const auto& times = c.output.times;
  require_times(g, times);
  const InitialState initial = make_initial_state(c, g);
  prepare_output(c);

  EvolveOutcome outcome;
  std::optional<spectral::SpectralState> state;
  if (method != Method::fdm) {
    const auto report = spectral::project(g, initial.function, c.state.n_max, c.state.quad_tol, initial.breakpoints);
    state = spectral::make_state(g, report);
    json coefficients = json::array();
    for (Eigen::Index i = 0; i < report.coefficients.size(); ++i)
      coefficients.push_back({{"n", i + 1}, {"re", report.coefficients[i].real()}, {"im", report.coefficients[i].imag()}});
    const json projection = {{"captured_norm", report.captured_norm},
                             {"truncation_error", report.truncation_error},
                             {"quadrature_estimate", report.quadrature_estimate},
                             {"coefficients", coefficients}};
    write_text(out_path(c, "projection.json"), projection.dump(2) + "\n");

    CsvTable obs({"t", "norm_x", "mean_x"});
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double t = times[i];
      const auto o = spectral::observables(*state, t, std::max(16, c.output.grid_points));
      obs.add_row({t, o.norm_x, o.mean_x});
      const Eigen::VectorXd xs = spectral::well_grid(g, t, c.output.grid_points);
      const Eigen::VectorXcd values = spectral::eval_state(*state, xs, t);
      if (c.output.wants("csv")) density_table(xs, values).write(out_path(c, snapshot_name("analytic", i, "csv")));
      if (c.output.wants("svg"))
        write_text(out_path(c, snapshot_name("analytic", i, "svg")),
                   density_svg(xs, values.cwiseAbs2(), g.wall_positions(t), "analytic |psi|^2 at t=" + format_double(t)));
    }
    obs.write(out_path(c, "observables.csv"));
  }

  if (method != Method::analytic) {
    fdm::SolverSettings settings{c.solver.dt};
    fdm::GridState grid = fdm::init_from_lab(g, initial.function, c.solver.nx, 0.0);
    CsvTable norms({"t", "discrete_norm"});
    CsvTable fidelities({"t", "fidelity"});
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double t = times[i];
      fdm::advance(grid, t, settings);
      norms.add_row({t, grid.discrete_norm()});
      const fdm::LabSamples lab = fdm::map_to_lab(grid);
      if (c.output.wants("csv")) density_table(lab.xs, lab.values).write(out_path(c, snapshot_name("fdm", i, "csv")));
      if (c.output.wants("svg"))
        write_text(out_path(c, snapshot_name("fdm", i, "svg")),
                   density_svg(lab.xs, lab.values.cwiseAbs2(), g.wall_positions(t), "fdm |psi|^2 at t=" + format_double(t)));
      if (method == Method::both) {
        const fdm::LabSamples exact{lab.xs, spectral::eval_state(*state, lab.xs, t)};
        const double f = fdm::fidelity(lab, exact);
        fidelities.add_row({t, f});
        outcome.min_fidelity = std::min(outcome.min_fidelity, f);
      }
    }
    norms.write(out_path(c, "fdm_norm.csv"));
    if (method == Method::both) {
      fidelities.write(out_path(c, "fidelity.csv"));
      outcome.fidelity_ok = outcome.min_fidelity >= c.solver.fidelity_floor;
    }
  }
  return outcome;
}

VerifyOutcome cmd_verify(const RunConfig& c) {
  const Geometry g = c.make_geometry();
  const auto& v = c.verify;
  g.require_valid(std::max(v.t_max, v.boundary_t_max));
  for (double t : v.times) g.require_valid(t);

  json checks = json::array();
  bool all_pass = true;
  auto record = [&](json entry) {
    all_pass = all_pass && entry["pass"].get<bool>();
    checks.push_back(std::move(entry));
  };

  // Lab-frame residual and its convergence, one probe set shared by all spacings.
  const double coarse = v.spacings.front(), fine = v.spacings.back();
  const auto probes = verify::random_probes(g, v.probe_count, 0.0, v.t_max, coarse, coarse, v.seed);
  for (int n : v.modes) {
    const verify::Field field = verify::comoving_mode(g, n);
    std::vector<verify::ResidualReport> sweep;
    for (double h : v.spacings) sweep.push_back(verify::residual_lab(g, field, probes, h, h));
    const auto& finest = sweep.back();
    json entry = check("residual_mode_" + std::to_string(n), finest.relative_max, v.residual_threshold,
                       finest.relative_max <= v.residual_threshold);
    entry["report"] = residual_json(finest);
    record(entry);

    const auto order = verify::convergence_order(sweep);
    json conv = {{"name", "convergence_mode_" + std::to_string(n)},
                 {"value", order.fitted_order},
                 {"range", {v.order_min, v.order_max}},
                 {"pass", order.fitted_order >= v.order_min && order.fitted_order <= v.order_max},
                 {"spacings", order.spacings},
                 {"errors", order.errors}};
    record(conv);
  }

  const auto boundary_times = random_times(v.seed + 1, v.boundary_times, v.boundary_t_max);
  for (int n : v.modes) {
    const double b = verify::boundary_check(g, verify::raw_comoving_mode(g, n), boundary_times);
    record(check("boundary_mode_" + std::to_string(n), b, v.boundary_threshold, b <= v.boundary_threshold));
  }

  const auto norm_times = random_times(v.seed + 2, v.norm_times, v.boundary_t_max);
  double worst_norm = 0.0;
  for (int n = 1; n <= v.norm_modes; ++n)
    for (double t : norm_times) worst_norm = std::max(worst_norm, verify::norm_deviation(g, n, t));
  record(check("norm_conservation", worst_norm, v.norm_threshold, worst_norm <= v.norm_threshold));

  for (double t : v.times) {
    const double dev = verify::orthonormality_check(g, v.n_max, t);
    json entry = check("orthonormality", dev, v.orthonormality_threshold, dev <= v.orthonormality_threshold);
    entry["t"] = t;
    entry["n_max"] = v.n_max;
    record(entry);
  }

  {
    verify::AuditOptions opts;
    opts.probe_count = v.probe_count;
    opts.boundary_times = v.boundary_times;
    opts.t_max = v.t_max;
    opts.dx = opts.dt = fine;
    opts.residual_threshold = v.residual_threshold;
    opts.boundary_threshold = v.boundary_threshold;
    opts.seed = v.seed + 3;
    json entry = {{"name", "sign_convention_audit"}, {"mode", v.modes.front()}};
    try {
      const auto audit = verify::sign_convention_audit(g, v.modes.front(), opts);
      json candidates = json::array();
      for (const auto& cand : audit.candidates)
        candidates.push_back({{"convention", verify::to_string(cand.convention)},
                              {"residual", residual_json(cand.residual)},
                              {"boundary", cand.boundary},
                              {"passes", cand.passes}});
      entry["passing_convention"] = verify::to_string(audit.passing_convention);
      entry["candidates"] = candidates;
      entry["pass"] = audit.passing_convention != verify::Convention::literal_sine;
    } catch (const AuditFailed& e) {
      entry["passing_convention"] = "none";
      entry["error"] = e.what();
      entry["pass"] = false;
    }
    record(entry);
  }

  {
    const auto phase = verify::phase_equation_check(g, 100, v.t_max, v.seed + 4);
    record(check("phase_gradient_condition", phase.max_gradient_condition, v.phase_threshold,
                 phase.max_gradient_condition <= v.phase_threshold));
    record(check("phase_curvature_condition", phase.max_curvature_condition, v.phase_threshold,
                 phase.max_curvature_condition <= v.phase_threshold));
  }

  {
    double worst = 0.0;
    QuadratureOptions opts;
    opts.tolerance = 1e-14;
    for (double t : random_times(v.seed + 5, 50, v.t_max)) {
      const double quad = integrate(
                              [&](double s) {
                                const double L = g.scale_factor(s);
                                return 1.0 / (L * L);
                              },
                              0.0, t, opts)
                              .value;
      worst = std::max(worst, std::abs(quad - time_phase_integral(g, t)));
    }
    record(check("tau_closed_form", worst, v.tau_threshold, worst <= v.tau_threshold));
  }

  VerifyOutcome out;
  out.all_pass = all_pass;
  out.report = {{"geometry", to_json(c)["geometry"]}, {"seed", v.seed}, {"checks", checks}, {"all_pass", all_pass}};
  prepare_output(c);
  write_text(out_path(c, "verify_report.json"), out.report.dump(2) + "\n");
  return out;
}

int run(const std::string& command, const std::string& config_path, const std::optional<std::string>& method,
        const std::optional<std::string>& out_dir, std::ostream& out, std::ostream& err) {
  try {
    RunConfig config = load_config(config_path);
    if (out_dir) config.output.directory = *out_dir;
    if (command == "modes") {
      cmd_modes(config);
      out << "wrote mode tables to " << config.output.directory << "\n";
      return kOk;
    }
    if (command == "evolve") {
      const Method m = parse_method(method.value_or("analytic"));
      const EvolveOutcome o = cmd_evolve(config, m);
      if (m == Method::both) {
        out << "minimum fidelity " << format_double(o.min_fidelity) << "\n";
        if (!o.fidelity_ok) {
          err << "fidelity " << format_double(o.min_fidelity) << " below floor "
              << format_double(config.solver.fidelity_floor) << "\n";
          return kAuditFailed;
        }
      }
      return kOk;
    }
    if (command == "verify") {
      const VerifyOutcome o = cmd_verify(config);
      for (const auto& entry : o.report["checks"])
        out << (entry["pass"].get<bool>() ? "PASS " : "FAIL ") << entry["name"].get<std::string>() << "\n";
      return o.all_pass ? kOk : kAuditFailed;
    }
    err << "unknown command '" << command << "'\n";
    return kInvalidConfig;
  } catch (const HorizonExceeded& e) {
    err << "horizon exceeded: " << e.what() << " (t*=" << format_double(e.horizon()) << ")\n";
    return kHorizonExceeded;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const AuditFailed& e) {
    err << "audit failed: " << e.what() << "\n";
    return kAuditFailed;
  } catch (const Error& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return kInvalidConfig;
  }
}

}  // namespace moving_well::cli
