#pragma once

#include <string>
#include <vector>

namespace fuzzycent::svg {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

/// Minimal static line chart.
std::string line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                       const std::vector<Series>& series);

/// Grouped bar chart: one group per category, one bar per series (series[i].y
/// holds one value per category).
std::string bar_chart(const std::string& title, const std::string& y_label,
                      const std::vector<std::string>& categories, const std::vector<Series>& series);

}  // namespace fuzzycent::svg
