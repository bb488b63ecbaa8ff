#include "moving_well/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <vector>

#include "moving_well/errors.hpp"
#include "moving_well/modes.hpp"
#include "moving_well/parallel.hpp"
#include "moving_well/quadrature.hpp"

namespace moving_well::spectral {
namespace {

/// Sorted list of panel edges: [lo, breakpoints strictly inside, hi].
std::vector<double> panel_edges(double lo, double hi, std::span<const double> breakpoints) {
  std::vector<double> edges{lo};
  for (double b : breakpoints)
    if (b > lo && b < hi) edges.push_back(b);
  std::sort(edges.begin() + 1, edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges.push_back(hi);
  return edges;
}

template <typename F>
QuadratureResult<std::complex<double>> integrate_pieces(F&& f, const std::vector<double>& edges, double tol) {
  QuadratureResult<std::complex<double>> total;
  const double width = edges.back() - edges.front();
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    QuadratureOptions opts;
    opts.tolerance = tol * (edges[i + 1] - edges[i]) / width;
    auto piece = integrate(f, edges[i], edges[i + 1], opts);
    total.value += piece.value;
    total.error_estimate += piece.error_estimate;
    total.panels += piece.panels;
  }
  return total;
}

}  // namespace

ProjectionReport project_at(const Geometry& g, const StateFunction& field, double t, int n_max, double quad_tol,
                            std::span<const double> breakpoints) {
  if (n_max < 1) throw InvalidParameter("n_max must be >= 1");
  if (!(quad_tol > 0.0)) throw InvalidParameter("quadrature tolerance must be positive");
  const auto edges = panel_edges(g.left_wall(t), g.right_wall(t), breakpoints);

  ProjectionReport report;
  report.coefficients.resize(n_max);
  std::vector<double> errors(static_cast<std::size_t>(n_max), 0.0);
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(n_max));

  parallel_for(
      static_cast<std::size_t>(n_max),
      [&](std::size_t i) {
        try {
          const Mode mode = make_mode(g, static_cast<int>(i) + 1);
          const Phase parts = mode_phase(mode, t);
          auto integrand = [&](double x) {
            return std::conj(detail::eval_mode_with(mode, parts, x, t)) * field(x);
          };
          auto r = integrate_pieces(integrand, edges, quad_tol);
          report.coefficients[static_cast<Eigen::Index>(i)] = r.value;
          errors[i] = r.error_estimate;
        } catch (...) {
          failures[i] = std::current_exception();
        }
      },
      1);
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  report.captured_norm = report.coefficients.squaredNorm();
  report.truncation_error = 1.0 - report.captured_norm;
  for (double e : errors) report.quadrature_estimate += e;
  return report;
}

ProjectionReport project(const Geometry& g, const StateFunction& initial, int n_max, double quad_tol,
                         std::span<const double> breakpoints) {
  return project_at(g, initial, 0.0, n_max, quad_tol, breakpoints);
}

SpectralState make_state(const Geometry& g, const ProjectionReport& report) { return {g, report.coefficients}; }

namespace {

struct StateEvaluator {
  const SpectralState& state;
  double t;
  Phase gauge;
  Eigen::VectorXcd weighted;  // c_n exp(-i E_n tau / hbar)

  StateEvaluator(const SpectralState& s, double time) : state(s), t(time), gauge(gauge_phase(s.geometry, time)) {
    const Geometry& g = s.geometry;
    const double tau = time_phase_integral(g, time);
    weighted.resize(s.coefficients.size());
    for (Eigen::Index i = 0; i < weighted.size(); ++i) {
      const double energy = mode_energy(g, static_cast<int>(i) + 1);
      weighted[i] = s.coefficients[i] * std::polar(1.0, -energy * tau / g.hbar());
    }
  }

  std::complex<double> operator()(double x) const {
    const Geometry& g = state.geometry;
    if (x <= g.left_wall(t) || x >= g.right_wall(t)) return {};
    const double a = g.width0();
    const double arg = std::numbers::pi * g.to_comoving(x, t) / a;
    std::complex<double> sum{};
    for (Eigen::Index i = 0; i < weighted.size(); ++i) sum += weighted[i] * std::sin(static_cast<double>(i + 1) * arg);
    return std::sqrt(2.0 / a) * gauge_factor(g, gauge, x, t) * sum;
  }
};

}  // namespace

std::complex<double> eval_state(const SpectralState& state, double x, double t) {
  return StateEvaluator(state, t)(x);
}

Eigen::VectorXcd eval_state(const SpectralState& state, const Eigen::Ref<const Eigen::VectorXd>& xs, double t) {
  const StateEvaluator eval(state, t);
  Eigen::VectorXcd out(xs.size());
  parallel_for(static_cast<std::size_t>(xs.size()), [&](std::size_t i) {
    const auto idx = static_cast<Eigen::Index>(i);
    out[idx] = eval(xs[idx]);
  });
  return out;
}

double norm(const SpectralState& state) { return state.coefficients.squaredNorm(); }

Eigen::VectorXd well_grid(const Geometry& g, double t, int count) {
  if (count < 2) throw InvalidParameter("grid needs at least two points");
  return Eigen::VectorXd::LinSpaced(count, g.left_wall(t), g.right_wall(t));
}

Observables observables(const SpectralState& state, double t, int grid_size, double quad_tol) {
  if (grid_size < 16) throw InvalidParameter("grid_size must be >= 16");
  const StateEvaluator eval(state, t);
  const double lo = state.geometry.left_wall(t), hi = state.geometry.right_wall(t);
  QuadratureOptions opts;
  opts.tolerance = quad_tol;
  Observables out;
  out.norm_x = integrate([&](double x) { return std::norm(eval(x)); }, lo, hi, opts).value;
  const double first_moment = integrate([&](double x) { return x * std::norm(eval(x)); }, lo, hi, opts).value;
  out.mean_x = out.norm_x > 0.0 ? first_moment / out.norm_x : 0.0;
  out.grid = well_grid(state.geometry, t, grid_size);
  out.density.resize(grid_size);
  for (int i = 0; i < grid_size; ++i) out.density[i] = std::norm(eval(out.grid[i]));
  return out;
}

}  // namespace moving_well::spectral
