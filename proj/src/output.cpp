#include "moving_well/output.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "moving_well/errors.hpp"

namespace moving_well::cli {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(const std::vector<double>& row) {
  if (row.size() != header_.size()) throw InvalidParameter("CSV row width does not match header");
  rows_.push_back(row);
}

std::string CsvTable::str() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < header_.size(); ++i) out << (i ? "," : "") << header_[i];
  out << "\r\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << "\r\n";
  }
  return out.str();
}

void CsvTable::write(const std::string& path) const { write_text(path, str()); }

CsvTable density_table(const Eigen::VectorXd& xs, const Eigen::VectorXcd& values) {
  CsvTable table({"x", "re_psi", "im_psi", "density"});
  for (Eigen::Index i = 0; i < xs.size(); ++i)
    table.add_row({xs[i], values[i].real(), values[i].imag(), std::norm(values[i])});
  return table;
}

std::string density_svg(const Eigen::VectorXd& xs, const Eigen::VectorXd& density, std::pair<double, double> walls,
                        const std::string& title) {
  constexpr double width = 640, height = 400, margin = 40;
  const double x_lo = std::min(walls.first, xs.size() ? xs.minCoeff() : walls.first);
  const double x_hi = std::max(walls.second, xs.size() ? xs.maxCoeff() : walls.second);
  const double pad = 0.05 * (x_hi - x_lo);
  const double lo = x_lo - pad, hi = x_hi + pad;
  const double y_max = density.size() && density.maxCoeff() > 0.0 ? 1.1 * density.maxCoeff() : 1.0;
  auto px = [&](double x) { return margin + (width - 2 * margin) * (x - lo) / (hi - lo); };
  auto py = [&](double y) { return height - margin - (height - 2 * margin) * y / y_max; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << margin << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
  svg << "<line x1=\"" << margin << "\" y1=\"" << py(0) << "\" x2=\"" << width - margin << "\" y2=\"" << py(0)
      << "\" stroke=\"black\"/>\n";
  for (double wall : {walls.first, walls.second})
    svg << "<line x1=\"" << format_double(px(wall)) << "\" y1=\"" << margin << "\" x2=\"" << format_double(px(wall))
        << "\" y2=\"" << py(0) << "\" stroke=\"gray\" stroke-width=\"3\"/>\n";
  svg << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  for (Eigen::Index i = 0; i < xs.size(); ++i)
    svg << (i ? " " : "") << format_double(px(xs[i])) << ',' << format_double(py(density[i]));
  svg << "\"/>\n</svg>\n";
  return svg.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace moving_well::cli
