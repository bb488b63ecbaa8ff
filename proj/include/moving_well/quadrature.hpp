#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "moving_well/errors.hpp"

namespace moving_well {

/// Gauss-Legendre nodes and weights on [-1, 1], computed once by Newton
/// iteration on P_N in long double.
template <std::size_t N>
struct GaussLegendreRule {
  std::array<double, N> nodes{};
  std::array<double, N> weights{};

  static const GaussLegendreRule& instance() {
    static const GaussLegendreRule rule = build();
    return rule;
  }

 private:
  static GaussLegendreRule build() {
    GaussLegendreRule rule;
    using LD = long double;
    for (std::size_t i = 0; i < (N + 1) / 2; ++i) {
      LD x = std::cos(std::numbers::pi_v<LD> * (LD(i) + LD(0.75)) / (LD(N) + LD(0.5)));
      LD dp = 0;
      for (int iter = 0; iter < 100; ++iter) {
        LD p0 = 1, p1 = x;
        for (std::size_t k = 2; k <= N; ++k) {
          LD p2 = ((2 * LD(k) - 1) * x * p1 - (LD(k) - 1) * p0) / LD(k);
          p0 = p1;
          p1 = p2;
        }
        dp = LD(N) * (x * p1 - p0) / (x * x - 1);
        LD dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < LD(1e-19)) break;
      }
      LD w = 2 / ((1 - x * x) * dp * dp);
      rule.nodes[i] = static_cast<double>(-x);
      rule.nodes[N - 1 - i] = static_cast<double>(x);
      rule.weights[i] = rule.weights[N - 1 - i] = static_cast<double>(w);
    }
    return rule;
  }
};

struct QuadratureOptions {
  /// Absolute tolerance on the whole interval.
  double tolerance = 1e-12;
  std::size_t max_panels = std::size_t{1} << 14;
};

template <typename Value>
struct QuadratureResult {
  Value value{};
  double error_estimate = 0.0;
  std::size_t panels = 0;
};

/// Fixed composite rule: `panels` equal panels of an N-point Gauss rule.
template <std::size_t N = 32, typename F>
auto gauss_legendre(F&& f, double lo, double hi, std::size_t panels = 1) {
  using Value = decltype(f(lo));
  const auto& rule = GaussLegendreRule<N>::instance();
  const double width = (hi - lo) / static_cast<double>(panels);
  Value total{};
  for (std::size_t p = 0; p < panels; ++p) {
    const double left = lo + width * static_cast<double>(p);
    const double half = 0.5 * width;
    const double mid = left + half;
    Value acc{};
    for (std::size_t i = 0; i < N; ++i) acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    total += half * acc;
  }
  return total;
}

/// Adaptive composite Gauss-Legendre quadrature.
///
/// Each panel is compared against the sum over its two halves; panels whose
/// discrepancy exceeds their share of the tolerance are bisected. Throws
/// QuadratureBudgetExceeded once more than `max_panels` panels would be live.
template <std::size_t N = 32, typename F>
auto integrate(F&& f, double lo, double hi, const QuadratureOptions& opts = {}) {
  using Value = decltype(f(lo));
  if (!(opts.tolerance > 0.0)) throw InvalidParameter("quadrature tolerance must be positive");
  QuadratureResult<Value> out;
  if (hi == lo) return out;
  const double total_width = std::abs(hi - lo);

  struct Panel {
    double lo, hi;
    Value estimate;
  };
  std::vector<Panel> pending{{lo, hi, gauss_legendre<N>(f, lo, hi)}};
  std::size_t live = 1;
  Value accepted{};
  double accepted_error = 0.0;

  while (!pending.empty()) {
    Panel panel = pending.back();
    pending.pop_back();
    const double mid = 0.5 * (panel.lo + panel.hi);
    Value left = gauss_legendre<N>(f, panel.lo, mid);
    Value right = gauss_legendre<N>(f, mid, panel.hi);
    Value refined = left + right;
    const double err = std::abs(refined - panel.estimate);
    const double share = opts.tolerance * std::abs(panel.hi - panel.lo) / total_width;
    if (err <= share || std::abs(panel.hi - panel.lo) < 1e-15 * total_width) {
      accepted += refined;
      accepted_error += err;
      continue;
    }
    if (live + 1 > opts.max_panels) {
      Value best = accepted + refined;
      double best_err = accepted_error + err;
      for (const auto& p : pending) {
        best += p.estimate;
        best_err += std::abs(p.estimate);
      }
      throw QuadratureBudgetExceeded(std::complex<double>(best), best_err);
    }
    ++live;
    pending.push_back({mid, panel.hi, right});
    pending.push_back({panel.lo, mid, left});
  }
  out.value = accepted;
  out.error_estimate = accepted_error;
  out.panels = live;
  return out;
}

}  // namespace moving_well
