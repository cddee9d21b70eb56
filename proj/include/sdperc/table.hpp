#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sdperc {

// Rows of pre-formatted cells under a fixed header.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);  // throws if the width is wrong
  void write_csv(std::ostream& out) const;
};

// Shortest round-trip decimal for a double ("nan" for NaN).
std::string format_real(double value);
std::string format_flag(bool value);

}  // namespace sdperc
