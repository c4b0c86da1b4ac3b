#include "fuzzycent/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>
#include <sstream>

namespace fuzzycent::svg {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 170, kTop = 40, kBottom = 55;
constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                                 "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
  double py(double y) const { return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom); }
};

void header(std::ostringstream& out, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
      << "</text>\n";
}

void axes(std::ostringstream& out, const Frame& f, const std::string& x_label, const std::string& y_label,
          bool x_ticks) {
  const double xb = kHeight - kBottom, xr = kWidth - kRight;
  out << "<line x1=\"" << kLeft << "\" y1=\"" << xb << "\" x2=\"" << xr << "\" y2=\"" << xb
      << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << xb
      << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double y = f.y0 + (f.y1 - f.y0) * i / 4.0;
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << f.py(y) + 4 << "\" text-anchor=\"end\">" << fmt(y)
        << "</text>\n";
    if (x_ticks) {
      const double x = f.x0 + (f.x1 - f.x0) * i / 4.0;
      out << "<text x=\"" << f.px(x) << "\" y=\"" << xb + 16 << "\" text-anchor=\"middle\">" << fmt(x)
          << "</text>\n";
    }
  }
  out << "<text x=\"" << (kLeft + xr) / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">"
      << escape(x_label) << "</text>\n"
      << "<text transform=\"translate(16," << (kTop + xb) / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(y_label) << "</text>\n";
}

void legend(std::ostringstream& out, const std::vector<Series>& series) {
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double y = kTop + 10 + 18.0 * static_cast<double>(i);
    const double x = kWidth - kRight + 12;
    out << "<rect x=\"" << x << "\" y=\"" << y - 9 << "\" width=\"12\" height=\"10\" fill=\""
        << kPalette[i % kPalette.size()] << "\"/>\n"
        << "<text x=\"" << x + 18 << "\" y=\"" << y << "\" font-size=\"10\">" << escape(series[i].name)
        << "</text>\n";
  }
}

}  // namespace

std::string line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                       const std::vector<Series>& series) {
  Frame f{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest(), 0.0, 0.0};
  for (const auto& s : series) {
    for (double x : s.x) f.x0 = std::min(f.x0, x), f.x1 = std::max(f.x1, x);
    for (double y : s.y) f.y1 = std::max(f.y1, y);
  }
  if (!(f.x1 > f.x0)) f.x0 = 0, f.x1 = 1;
  if (!(f.y1 > f.y0)) f.y1 = 1;

  std::ostringstream out;
  header(out, title);
  axes(out, f, x_label, y_label, true);
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" << kPalette[i % kPalette.size()]
        << "\" points=\"";
    for (std::size_t k = 0; k < series[i].x.size() && k < series[i].y.size(); ++k) {
      out << fmt(f.px(series[i].x[k])) << ',' << fmt(f.py(series[i].y[k])) << ' ';
    }
    out << "\"/>\n";
  }
  legend(out, series);
  out << "</svg>\n";
  return out.str();
}

std::string bar_chart(const std::string& title, const std::string& y_label,
                      const std::vector<std::string>& categories, const std::vector<Series>& series) {
  Frame f{0.0, static_cast<double>(std::max<std::size_t>(categories.size(), 1)), 0.0, 0.0};
  for (const auto& s : series) {
    for (double y : s.y) f.y1 = std::max(f.y1, y);
  }
  if (!(f.y1 > 0)) f.y1 = 1;

  std::ostringstream out;
  header(out, title);
  axes(out, f, "", y_label, false);
  const double group = f.px(1) - f.px(0);
  const double bar = group * 0.8 / static_cast<double>(std::max<std::size_t>(series.size(), 1));
  for (std::size_t c = 0; c < categories.size(); ++c) {
    const double gx = f.px(static_cast<double>(c)) + group * 0.1;
    for (std::size_t i = 0; i < series.size(); ++i) {
      if (c >= series[i].y.size()) continue;
      const double top = f.py(std::max(0.0, series[i].y[c]));
      out << "<rect x=\"" << fmt(gx + bar * static_cast<double>(i)) << "\" y=\"" << fmt(top) << "\" width=\""
          << fmt(bar) << "\" height=\"" << fmt(f.py(0) - top) << "\" fill=\"" << kPalette[i % kPalette.size()]
          << "\"/>\n";
    }
    out << "<text x=\"" << fmt(gx + group * 0.4) << "\" y=\"" << kHeight - kBottom + 16
        << "\" text-anchor=\"middle\">" << escape(categories[c]) << "</text>\n";
  }
  legend(out, series);
  out << "</svg>\n";
  return out.str();
}

}  // namespace fuzzycent::svg
