#include "moving_well/initial_states.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "moving_well/errors.hpp"
#include "moving_well/modes.hpp"

namespace moving_well::spectral {

StateFunction box_state(const Geometry& g, int n) {
  if (n < 1) throw InvalidParameter("quantum number n must be >= 1");
  const double a = g.width0();
  return [a, n](double x) -> std::complex<double> {
    if (x <= 0.0 || x >= a) return {};
    return std::sqrt(2.0 / a) * std::sin(n * std::numbers::pi * x / a);
  };
}

StateFunction mode_state(const Geometry& g, int n) {
  const Mode mode = make_mode(g, n);
  return [mode](double x) { return eval_mode(mode, x, 0.0); };
}

StateFunction gaussian_packet(double center, double width, double momentum, double hbar) {
  if (!(width > 0.0)) throw InvalidParameter("gaussian width must be positive");
  const double norm = std::pow(2.0 * std::numbers::pi * width * width, -0.25);
  return [=](double x) {
    const double d = x - center;
    return norm * std::exp(-d * d / (4.0 * width * width)) * std::polar(1.0, momentum * x / hbar);
  };
}

std::complex<double> TabulatedState::operator()(double x) const {
  const Eigen::Index n = xs.size();
  if (n == 0 || x < xs[0] || x > xs[n - 1]) return {};
  const double* begin = xs.data();
  const double* it = std::upper_bound(begin, begin + n, x);
  const Eigen::Index hi = std::min<Eigen::Index>(it - begin, n - 1);
  const Eigen::Index lo = std::max<Eigen::Index>(hi - 1, 0);
  if (hi == lo) return values[lo];
  const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return (1.0 - w) * values[lo] + w * values[hi];
}

std::vector<double> TabulatedState::breakpoints() const { return {xs.data(), xs.data() + xs.size()}; }

TabulatedState parse_csv_state(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidParameter("state CSV is empty (a header row is required)");
  std::vector<double> x;
  std::vector<std::complex<double>> v;
  std::size_t columns = 0;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> cells;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        cells.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw InvalidParameter("state CSV row " + std::to_string(row) + ": not a number: '" + cell + "'");
      }
    }
    if (cells.size() != 2 && cells.size() != 3)
      throw InvalidParameter("state CSV row " + std::to_string(row) + ": expected 2 or 3 columns");
    if (columns == 0) columns = cells.size();
    if (cells.size() != columns) throw InvalidParameter("state CSV rows have inconsistent column counts");
    if (!x.empty() && !(cells[0] > x.back())) throw InvalidParameter("state CSV x column must strictly increase");
    x.push_back(cells[0]);
    v.emplace_back(cells[1], columns == 3 ? cells[2] : 0.0);
  }
  if (x.size() < 2) throw InvalidParameter("state CSV needs at least two samples");
  TabulatedState out;
  out.xs = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
  out.values = Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
  return out;
}

TabulatedState load_csv_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open state CSV '" + path + "'");
  return parse_csv_state(in);
}

}  // namespace moving_well::spectral
