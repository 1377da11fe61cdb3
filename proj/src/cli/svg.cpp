#include "momap/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace momap::cli {

namespace {

constexpr double kWidth = 640, kHeight = 400, kMargin = 56;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;

  double px(double x) const { return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin); }
  double py(double y) const { return kHeight - kMargin - (y - y0) / (y1 - y0) * (kHeight - 2 * kMargin); }
};

Frame fit(const std::vector<Series>& series) {
  Frame f;
  double inf = std::numeric_limits<double>::infinity();
  f.x0 = f.y0 = inf;
  f.x1 = f.y1 = -inf;
  for (const auto& s : series) {
    for (size_t i = 0; i < s.x.size(); ++i) {
      f.x0 = std::min(f.x0, s.x[i]);
      f.x1 = std::max(f.x1, s.x[i]);
      f.y0 = std::min(f.y0, s.y[i]);
      f.y1 = std::max(f.y1, s.y[i]);
    }
  }
  if (!std::isfinite(f.x0)) f = Frame{};
  if (f.x1 - f.x0 < 1e-300) f.x1 = f.x0 + 1;
  if (f.y1 - f.y0 < 1e-300) {
    f.y0 -= 0.5;
    f.y1 += 0.5;
  }
  return f;
}

void header(std::ostringstream& os, const std::string& title, const Frame& f, bool log_y) {
  os << std::setprecision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
     << "font-size=\"15\">" << escape(title) << "</text>\n";
  os << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin << "\" height=\""
     << kHeight - 2 * kMargin << "\" fill=\"none\" stroke=\"#444\"/>\n";
  auto label = [&](double x, double y, const std::string& anchor, double v) {
    os << "<text x=\"" << x << "\" y=\"" << y << "\" text-anchor=\"" << anchor
       << "\" font-family=\"sans-serif\" font-size=\"11\">" << v << "</text>\n";
  };
  label(kMargin, kHeight - kMargin + 16, "start", f.x0);
  label(kWidth - kMargin, kHeight - kMargin + 16, "end", f.x1);
  label(kMargin - 4, kHeight - kMargin, "end", f.y0);
  label(kMargin - 4, kMargin + 10, "end", f.y1);
  if (log_y) {
    os << "<text x=\"14\" y=\"" << kHeight / 2 << "\" font-family=\"sans-serif\" font-size=\"11\" "
       << "transform=\"rotate(-90 14 " << kHeight / 2 << ")\">log10</text>\n";
  }
}

}  // namespace

std::string svg_line_plot(const std::string& title, const std::vector<Series>& series, bool log_y) {
  std::vector<Series> plotted;
  for (const auto& s : series) {
    Series p{s.name, {}, {}};
    for (size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      double y = s.y[i];
      if (log_y) {
        if (y == 0 || !std::isfinite(y)) continue;
        y = std::log10(std::abs(y));
      }
      if (!std::isfinite(y) || !std::isfinite(s.x[i])) continue;
      p.x.push_back(s.x[i]);
      p.y.push_back(y);
    }
    plotted.push_back(std::move(p));
  }
  Frame f = fit(plotted);
  std::ostringstream os;
  header(os, title, f, log_y);
  for (size_t k = 0; k < plotted.size(); ++k) {
    const auto& s = plotted[k];
    const char* color = kColors[k % 5];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < s.x.size(); ++i) os << (i ? " " : "") << f.px(s.x[i]) << ',' << f.py(s.y[i]);
    os << "\"/>\n";
    os << "<text x=\"" << kWidth - kMargin - 4 << "\" y=\"" << kMargin + 16 + 14 * k
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color << "\">"
       << escape(s.name) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string svg_scatter(const std::string& title, const std::vector<double>& values) {
  Series s{"", {}, {}};
  for (size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) continue;
    s.x.push_back(static_cast<double>(i));
    s.y.push_back(values[i]);
  }
  Frame f = fit({s});
  std::ostringstream os;
  header(os, title, f, false);
  for (size_t i = 0; i < s.x.size(); ++i)
    os << "<circle cx=\"" << f.px(s.x[i]) << "\" cy=\"" << f.py(s.y[i]) << "\" r=\"3\" fill=\"" << kColors[0]
       << "\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace momap::cli
