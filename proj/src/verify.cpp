#include "moving_well/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "moving_well/errors.hpp"
#include "moving_well/modes.hpp"
#include "moving_well/quadrature.hpp"

namespace moving_well::verify {
namespace {

// Mode n with the sine centred on `sine_origin_velocity * t`. Unlike
// eval_mode, the formula is evaluated as-is on the walls themselves so the
// boundary audit sees the real value there.
Field raw_mode(const Geometry& g, int n, double sine_origin_velocity) {
  const Mode mode = make_mode(g, n);
  return [mode, sine_origin_velocity](double x, double t) -> std::complex<double> {
    const Geometry& geo = mode.geometry;
    if (x < geo.left_wall(t) || x > geo.right_wall(t)) return {};
    const Phase parts = mode_phase(mode, t);
    const double a = geo.width0();
    const double L = geo.scale_factor(t);
    const double s = std::sin(mode.n * std::numbers::pi * (x - sine_origin_velocity * t) / (a * L));
    return std::sqrt(2.0 / a) * std::exp(parts.log_amplitude) * s * std::polar(1.0, parts.angle(geo, x, t));
  };
}

double wall_span_left(const Geometry& g, double t, double dt) {
  return std::max({g.left_wall(t - dt), g.left_wall(t), g.left_wall(t + dt)});
}

double wall_span_right(const Geometry& g, double t, double dt) {
  return std::min({g.right_wall(t - dt), g.right_wall(t), g.right_wall(t + dt)});
}

}  // namespace

std::vector<Probe> random_probes(const Geometry& g, std::size_t count, double t_min, double t_max, double dx,
                                 double dt, std::uint64_t seed) {
  const double lo = t_min + 2.0 * dt, hi = t_max - 2.0 * dt;
  if (!(hi > lo)) throw InvalidParameter("probe time window is narrower than the stencil margin");
  g.require_valid(t_max);
  g.require_valid(t_min);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Probe> probes;
  probes.reserve(count);
  while (probes.size() < count) {
    const double t = lo + (hi - lo) * unit(rng);
    const double left = wall_span_left(g, t, dt) + 2.0 * dx;
    const double right = wall_span_right(g, t, dt) - 2.0 * dx;
    if (!(right > left)) continue;
    probes.push_back({left + (right - left) * unit(rng), t});
  }
  return probes;
}

ResidualReport residual_lab(const Geometry& g, const Field& field, std::span<const Probe> probes, double dx,
                            double dt) {
  if (!(dx > 0.0) || !(dt > 0.0)) throw InvalidParameter("stencil spacings must be positive");
  if (probes.empty()) throw InvalidProbe("no probes supplied");
  const double hbar = g.hbar(), m = g.mass();
  const double e1 = mode_energy(g, 1);
  ResidualReport report{dx, dt};
  double sum_sq = 0.0;
  for (const Probe& p : probes) {
    if (p.t - 2.0 * dt < 0.0 || !g.is_valid_time(p.t + 2.0 * dt))
      throw InvalidProbe("probe time too close to t = 0 or to the validity horizon");
    if (p.x - 2.0 * dx <= wall_span_left(g, p.t, dt) || p.x + 2.0 * dx >= wall_span_right(g, p.t, dt))
      throw InvalidProbe("probe too close to a wall");
    const std::complex<double> center = field(p.x, p.t);
    const std::complex<double> d_t = (field(p.x, p.t + dt) - field(p.x, p.t - dt)) / (2.0 * dt);
    const std::complex<double> d_xx = (field(p.x + dx, p.t) - 2.0 * center + field(p.x - dx, p.t)) / (dx * dx);
    const double r = std::abs(std::complex<double>(0.0, hbar) * d_t + (hbar * hbar / (2.0 * m)) * d_xx);
    report.max_residual = std::max(report.max_residual, r);
    sum_sq += r * r;
    report.reference_scale = std::max(report.reference_scale, e1 * std::abs(center));
  }
  report.l2_residual = std::sqrt(sum_sq / static_cast<double>(probes.size()));
  report.relative_max = report.reference_scale > 0.0 ? report.max_residual / report.reference_scale
                                                     : std::numeric_limits<double>::infinity();
  return report;
}

double boundary_check(const Geometry& g, const Field& field, std::span<const double> times, int interior_samples) {
  if (interior_samples < 3) throw InvalidParameter("need at least three interior samples");
  double worst = 0.0;
  for (double t : times) {
    g.require_valid(t);
    const double lo = g.left_wall(t), hi = g.right_wall(t);
    double interior = 0.0;
    for (int i = 1; i <= interior_samples; ++i)
      interior = std::max(interior, std::abs(field(lo + (hi - lo) * i / (interior_samples + 1.0), t)));
    const double edge = std::max(std::abs(field(lo, t)), std::abs(field(hi, t)));
    if (interior == 0.0) {
      if (edge > 0.0) return std::numeric_limits<double>::infinity();
      continue;
    }
    worst = std::max(worst, edge / interior);
  }
  return worst;
}

double orthonormality_check(const Geometry& g, int n_max, double t, double quad_tol) {
  if (n_max < 1) throw InvalidParameter("n_max must be >= 1");
  const double lo = g.left_wall(t), hi = g.right_wall(t);
  std::vector<Mode> modes;
  std::vector<Phase> phases;
  for (int n = 1; n <= n_max; ++n) {
    modes.push_back(make_mode(g, n));
    phases.push_back(mode_phase(modes.back(), t));
  }
  QuadratureOptions opts;
  opts.tolerance = quad_tol;
  double worst = 0.0;
  for (int i = 0; i < n_max; ++i) {
    for (int j = i; j < n_max; ++j) {
      auto integrand = [&](double x) {
        return std::conj(detail::eval_mode_with(modes[i], phases[i], x, t)) *
               detail::eval_mode_with(modes[j], phases[j], x, t);
      };
      const std::complex<double> gram = integrate(integrand, lo, hi, opts).value;
      worst = std::max(worst, std::abs(gram - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

double norm_deviation(const Geometry& g, int n, double t, double quad_tol) {
  const Mode mode = make_mode(g, n);
  const Phase parts = mode_phase(mode, t);
  QuadratureOptions opts;
  opts.tolerance = quad_tol;
  const double norm = integrate([&](double x) { return std::norm(detail::eval_mode_with(mode, parts, x, t)); },
                                g.left_wall(t), g.right_wall(t), opts)
                          .value;
  return std::abs(norm - 1.0);
}

ConvergenceEstimate convergence_order(std::span<const double> spacings, std::span<const double> errors) {
  if (spacings.size() != errors.size()) throw InvalidParameter("spacings and errors differ in length");
  if (spacings.size() < 3) throw InvalidParameter("convergence fit needs at least three spacings");
  for (std::size_t i = 0; i < spacings.size(); ++i) {
    if (!(spacings[i] > 0.0) || !(errors[i] > 0.0)) throw InvalidParameter("spacings and errors must be positive");
    if (i > 0 && !(spacings[i] < spacings[i - 1])) throw InvalidParameter("spacings must strictly decrease");
  }
  const double n = static_cast<double>(spacings.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < spacings.size(); ++i) {
    const double lx = std::log(spacings[i]), ly = std::log(errors[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  ConvergenceEstimate out;
  out.spacings.assign(spacings.begin(), spacings.end());
  out.errors.assign(errors.begin(), errors.end());
  out.fitted_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return out;
}

ConvergenceEstimate convergence_order(std::span<const ResidualReport> reports) {
  std::vector<double> h, e;
  for (const auto& r : reports) {
    h.push_back(std::max(r.dx, r.dt));
    e.push_back(r.relative_max);
  }
  return convergence_order(h, e);
}

Field comoving_mode(const Geometry& g, int n) {
  const Mode mode = make_mode(g, n);
  return [mode](double x, double t) { return eval_mode(mode, x, t); };
}

Field raw_comoving_mode(const Geometry& g, int n) { return raw_mode(g, n, g.u_left()); }

Field literal_sine_mode(const Geometry& g, int n) { return raw_mode(g, n, -g.u_left()); }

std::string to_string(Convention c) {
  switch (c) {
    case Convention::comoving:
      return "comoving";
    case Convention::literal_sine:
      return "literal_sine";
    case Convention::degenerate_tie:
      return "degenerate_tie";
  }
  return "unknown";
}

SignAudit sign_convention_audit(const Geometry& g, int n, const AuditOptions& opts) {
  if (n < 1) throw InvalidParameter("quantum number n must be >= 1");
  const auto probes = random_probes(g, opts.probe_count, 0.0, opts.t_max, opts.dx, opts.dt, opts.seed);
  std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> times(opts.boundary_times);
  for (double& t : times) t = opts.t_max * unit(rng);

  SignAudit audit{Convention::degenerate_tie, {}};
  const std::pair<Convention, Field> candidates[] = {
      {Convention::comoving, raw_comoving_mode(g, n)},
      {Convention::literal_sine, literal_sine_mode(g, n)},
  };
  for (const auto& [convention, field] : candidates) {
    CandidateReport report{convention, residual_lab(g, field, probes, opts.dx, opts.dt), 0.0, false};
    report.boundary = boundary_check(g, field, times);
    report.passes =
        report.residual.relative_max <= opts.residual_threshold && report.boundary <= opts.boundary_threshold;
    audit.candidates.push_back(report);
  }
  const bool a = audit.candidates[0].passes, b = audit.candidates[1].passes;
  if (!a && !b) throw AuditFailed("no candidate phase convention satisfies the Schrödinger equation and the walls");
  if (a && b)
    audit.passing_convention = Convention::degenerate_tie;
  else
    audit.passing_convention = a ? Convention::comoving : Convention::literal_sine;
  return audit;
}

PhaseEquationCheck phase_equation_check(const Geometry& g, std::size_t samples, double t_max, std::uint64_t seed) {
  g.require_valid(t_max);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double a = g.width0(), hbar = g.hbar(), m = g.mass(), rate = g.scale_rate();
  PhaseEquationCheck out;
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = t_max * unit(rng);
    const double xbar = a * unit(rng);
    const double L = g.scale_factor(t);
    const Phase parts = gauge_phase(g, t);
    auto phibar = [&](double xb) { return -parts.angle(g, g.from_comoving(xb, t), t); };
    // phibar is quadratic in xbar, so central differences are exact up to
    // rounding; wide steps keep the rounding small.
    const double s1 = 1e-2 * a, s2 = 5e-2 * a;
    const double grad = (phibar(xbar + s1) - phibar(xbar - s1)) / (2.0 * s1);
    const double curv = (phibar(xbar + s2) - 2.0 * phibar(xbar) + phibar(xbar - s2)) / (s2 * s2);
    out.max_gradient_condition =
        std::max(out.max_gradient_condition, std::abs(hbar / (m * L) * grad + g.u_left() + xbar * rate));
    out.max_curvature_condition = std::max(out.max_curvature_condition, std::abs(curv + m / hbar * rate * L));
  }
  return out;
}

}  // namespace moving_well::verify
