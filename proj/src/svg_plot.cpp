#include "diknn/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace diknn {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 64, kRight = 24, kTop = 40, kBottom = 48;

struct Series {
  std::string label;
  std::string color;
  std::vector<double> x, mean, sd;
};

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(4);
  ss << v;
  return ss.str();
}

}  // namespace

void write_sweep_svg(const std::filesystem::path& path,
                     const std::vector<SummaryRow>& summary,
                     const std::string& title) {
  const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                           "#ff7f0e", "#8c564b"};
  std::map<std::pair<int, int>, Series> by_key;
  for (const auto& r : summary) {
    const auto key = std::make_pair(static_cast<int>(r.method),
                                    static_cast<int>(r.direction));
    Series& s = by_key[key];
    if (s.label.empty()) {
      s.label = std::string(to_string(r.method)) + " " + to_string(r.direction);
    }
    s.x.push_back(r.sweep_value);
    s.mean.push_back(r.mean_nats);
    s.sd.push_back(r.std_nats);
  }
  int ci = 0;
  for (auto& [_, s] : by_key) s.color = palette[ci++ % 6];

  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (const auto& [_, s] : by_key) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double lo = s.mean[i] - s.sd[i], hi = s.mean[i] + s.sd[i];
      if (first) {
        xmin = xmax = s.x[i];
        ymin = lo;
        ymax = hi;
        first = false;
      } else {
        xmin = std::min(xmin, s.x[i]);
        xmax = std::max(xmax, s.x[i]);
        ymin = std::min(ymin, lo);
        ymax = std::max(ymax, hi);
      }
    }
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  const auto sx = [&](double v) {
    return kLeft + (v - xmin) / (xmax - xmin) * (kWidth - kLeft - kRight);
  };
  const auto sy = [&](double v) {
    return kHeight - kBottom -
           (v - ymin) / (ymax - ymin) * (kHeight - kTop - kBottom);
  };

  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";

  // Axes and ticks.
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom
      << "\" x2=\"" << kWidth - kRight << "\" y2=\"" << kHeight - kBottom
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kHeight - kBottom << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 5; ++t) {
    const double fx = xmin + (xmax - xmin) * t / 5.0;
    const double fy = ymin + (ymax - ymin) * t / 5.0;
    out << "<text x=\"" << sx(fx) << "\" y=\"" << kHeight - kBottom + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" << fmt(fx) << "</text>\n";
    out << "<text x=\"" << kLeft - 8 << "\" y=\"" << sy(fy) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">" << fmt(fy) << "</text>\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << sy(fy) << "\" x2=\""
        << kWidth - kRight << "\" y2=\"" << sy(fy)
        << "\" stroke=\"#dddddd\"/>\n";
  }
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">sweep value</text>\n";
  out << "<text x=\"16\" y=\"" << kHeight / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\" transform=\"rotate(-90 16 " << kHeight / 2
      << ")\">DI (nats)</text>\n";

  double legend_y = kTop + 4;
  for (const auto& [_, s] : by_key) {
    // Stddev band.
    out << "<path d=\"M";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      out << sx(s.x[i]) << ' ' << sy(s.mean[i] + s.sd[i]) << ' '
          << (i + 1 < s.x.size() ? "L" : "");
    }
    for (std::size_t i = s.x.size(); i-- > 0;) {
      out << "L" << sx(s.x[i]) << ' ' << sy(s.mean[i] - s.sd[i]) << ' ';
    }
    out << "Z\" fill=\"" << s.color << "\" fill-opacity=\"0.12\" "
           "stroke=\"none\"/>\n";
    // Mean line.
    out << "<polyline fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"1.8\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      out << sx(s.x[i]) << ',' << sy(s.mean[i]) << ' ';
    }
    out << "\"/>\n";
    // Legend entry.
    out << "<line x1=\"" << kWidth - kRight - 150 << "\" y1=\"" << legend_y
        << "\" x2=\"" << kWidth - kRight - 126 << "\" y2=\"" << legend_y
        << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kWidth - kRight - 120 << "\" y=\"" << legend_y + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label
        << "</text>\n";
    legend_y += 16;
  }
  out << "</svg>\n";
}

}  // namespace diknn
