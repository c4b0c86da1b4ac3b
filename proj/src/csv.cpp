#include "fuzzycent/csv.hpp"

#include <charconv>

#include "fuzzycent/graph.hpp"

namespace fuzzycent::csv {

double to_double(const std::string& field, std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(line, "'" + field + "' is not a number");
  }
  return value;
}

long long to_integer(const std::string& field, std::size_t line) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(line, "'" + field + "' is not an integer");
  }
  return value;
}

}  // namespace fuzzycent::csv
