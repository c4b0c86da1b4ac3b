#pragma once

#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace fuzzycent::csv {

/// Shortest-safe round-trip form: 17 significant digits.
inline std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::vector<std::string> split_row(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double to_double(const std::string& field, std::size_t line);
long long to_integer(const std::string& field, std::size_t line);

}  // namespace fuzzycent::csv
