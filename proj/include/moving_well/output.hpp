#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace moving_well::cli {

/// Shortest text of a double that keeps all 17 significant digits.
std::string format_double(double v);

/// RFC-4180 table writer: header row first, CRLF line endings.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(const std::vector<double>& row);
  std::string str() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

/// x, Re psi, Im psi, |psi|^2
CsvTable density_table(const Eigen::VectorXd& xs, const Eigen::VectorXcd& values);

/// Static line plot of a density with the wall positions drawn as vertical
/// lines.
std::string density_svg(const Eigen::VectorXd& xs, const Eigen::VectorXd& density, std::pair<double, double> walls,
                        const std::string& title);

void write_text(const std::string& path, const std::string& text);

}  // namespace moving_well::cli
