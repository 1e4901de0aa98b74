#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace heunwell {

/// Real function sampled on a uniform x-grid.
struct GridFunction {
  double x_start = 0.0;
  double x_step = 0.0;
  std::vector<double> values;

  [[nodiscard]] double x(std::size_t i) const { return x_start + static_cast<double>(i) * x_step; }
  [[nodiscard]] std::size_t size() const { return values.size(); }
};

/// Column-oriented table written as CSV with '#'-prefixed comment lines.
struct Table {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Locale-independent scientific notation with `digits` significant digits.
std::string format_number(double value, int digits = 15);

void write_csv(std::ostream& out, const Table& table, int digits = 15);

/// Two-column (x, value) table from a grid function.
Table to_table(const GridFunction& grid, const std::string& x_name, const std::string& value_name);

}  // namespace heunwell
