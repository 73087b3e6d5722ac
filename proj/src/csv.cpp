#include "coarma/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "coarma/errors.hpp"

namespace coarma::csv {

std::vector<double> read_column(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");
  std::vector<double> out;
  std::string line;
  bool first_data_line = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    // Single column expected; take the first field if commas appear.
    const auto comma = line.find(',');
    std::string field = comma == std::string::npos ? line : line.substr(0, comma);
    try {
      std::size_t used = 0;
      const double v = std::stod(field, &used);
      out.push_back(v);
    } catch (const std::exception&) {
      if (first_data_line) {
        first_data_line = false;
        continue;  // header row
      }
      throw io_error("non-numeric value '" + field + "' in " + path);
    }
    first_data_line = false;
  }
  if (out.empty()) throw io_error("no data in '" + path + "'");
  return out;
}

std::string format_value(double x) {
  char buf[40];
  if (x == std::floor(x) && std::fabs(x) < 1e15) {
    std::snprintf(buf, sizeof(buf), "%.0f", x);
  } else {
    std::snprintf(buf, sizeof(buf), "%.12g", x);
  }
  return buf;
}

void write_table(const std::string& path, const Table& table) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write '" + path + "'");
  for (const auto& c : table.header_comments) out << "# " << c << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ",";
    out << table.columns[i];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size())
      throw shape_error("write_table: row width mismatch");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << format_value(row[i]);
    }
    out << "\n";
  }
  if (!out) throw io_error("write failed for '" + path + "'");
}

}  // namespace coarma::csv
