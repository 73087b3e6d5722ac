#pragma once

#include <string>
#include <vector>

namespace coarma::csv {

/// Reads a single-column CSV; '#' comment lines are skipped and a
/// non-numeric first row is treated as a header.
std::vector<double> read_column(const std::string& path);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> header_comments;  // emitted as "# ..." lines
};

/// Writes a table with fixed formatting so identical inputs produce
/// byte-identical files.
void write_table(const std::string& path, const Table& table);

std::string format_value(double x);

}  // namespace coarma::csv
