#include "heunwell/grid.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace heunwell {

std::string format_number(double value, int digits) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // drop the sign of negative zero
  char buffer[64];
  const auto result =
      std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::scientific, digits - 1);
  if (result.ec != std::errc{}) return "nan";
  return {buffer, result.ptr};
}

void write_csv(std::ostream& out, const Table& table, int digits) {
  for (const auto& line : table.comments) out << "# " << line << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i > 0) out << ',';
    out << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      out << format_number(row[i], digits);
    }
    out << '\n';
  }
}

Table to_table(const GridFunction& grid, const std::string& x_name, const std::string& value_name) {
  Table table;
  table.columns = {x_name, value_name};
  table.rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) table.rows.push_back({grid.x(i), grid.values[i]});
  return table;
}

}  // namespace heunwell
