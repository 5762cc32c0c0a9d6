#ifndef QUBOCUT_SVG_HPP
#define QUBOCUT_SVG_HPP

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace qubocut {

// One line on a chart: points (x[i], y[i]) with a shaded band of half-width
// band[i] around each point.
struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> band;
};

namespace detail {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
                                    "#bcbd22", "#e377c2"};

}  // namespace detail

// Minimal line chart with shaded uncertainty bands; y is clamped to
// [y_min, y_max] which defaults to the metric range [0, 1].
inline std::string render_line_chart(const std::string& title,
                                     const std::string& x_label,
                                     const std::string& y_label,
                                     const std::vector<SvgSeries>& series,
                                     double y_min = 0.0, double y_max = 1.0) {
  const double width = 720, height = 480;
  const double left = 70, right = 210, top = 50, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double x_min = 0.0, x_max = 1.0;
  bool have_x = false;
  for (const SvgSeries& s : series)
    for (double v : s.x) {
      if (!have_x) {
        x_min = x_max = v;
        have_x = true;
      }
      x_min = std::min(x_min, v);
      x_max = std::max(x_max, v);
    }
  if (x_max - x_min < 1e-12) x_max = x_min + 1.0;

  auto px = [&](double v) { return left + (v - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double v) {
    const double clamped = std::clamp(v, y_min, y_max);
    return top + (y_max - clamped) / (y_max - y_min) * plot_h;
  };

  std::ostringstream out;
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width
      << "' height='" << height << "'>\n"
      << "<rect width='100%' height='100%' fill='white'/>\n"
      << "<text x='" << width / 2 << "' y='28' text-anchor='middle' "
      << "font-family='sans-serif' font-size='17'>" << title << "</text>\n";

  // axes and grid
  out << "<g stroke='#cccccc' stroke-width='1'>\n";
  for (int g = 0; g <= 5; ++g) {
    const double v = y_min + (y_max - y_min) * g / 5.0;
    out << "<line x1='" << left << "' y1='" << py(v) << "' x2='" << left + plot_w
        << "' y2='" << py(v) << "'/>\n";
  }
  out << "</g>\n<g font-family='sans-serif' font-size='12' fill='#333333'>\n";
  for (int g = 0; g <= 5; ++g) {
    const double v = y_min + (y_max - y_min) * g / 5.0;
    out << "<text x='" << left - 8 << "' y='" << py(v) + 4
        << "' text-anchor='end'>" << v << "</text>\n";
  }
  const int x_ticks = std::min(10, static_cast<int>(x_max - x_min) + 1);
  for (int g = 0; g < x_ticks; ++g) {
    const double v = x_min + (x_max - x_min) * g / std::max(1, x_ticks - 1);
    out << "<text x='" << px(v) << "' y='" << top + plot_h + 20
        << "' text-anchor='middle'>" << v << "</text>\n";
  }
  out << "<text x='" << left + plot_w / 2 << "' y='" << height - 10
      << "' text-anchor='middle'>" << x_label << "</text>\n"
      << "<text x='18' y='" << top + plot_h / 2
      << "' text-anchor='middle' transform='rotate(-90 18 " << top + plot_h / 2
      << ")'>" << y_label << "</text>\n</g>\n"
      << "<rect x='" << left << "' y='" << top << "' width='" << plot_w
      << "' height='" << plot_h << "' fill='none' stroke='#333333'/>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const SvgSeries& s = series[i];
    const char* color = detail::kPalette[i % std::size(detail::kPalette)];
    if (s.x.empty()) continue;
    // band polygon: upper edge forward, lower edge backward
    out << "<polygon fill='" << color << "' fill-opacity='0.15' stroke='none' points='";
    for (std::size_t p = 0; p < s.x.size(); ++p)
      out << px(s.x[p]) << "," << py(s.y[p] + s.band[p]) << " ";
    for (std::size_t p = s.x.size(); p-- > 0;)
      out << px(s.x[p]) << "," << py(s.y[p] - s.band[p]) << " ";
    out << "'/>\n";
    out << "<polyline fill='none' stroke='" << color << "' stroke-width='2' points='";
    for (std::size_t p = 0; p < s.x.size(); ++p)
      out << px(s.x[p]) << "," << py(s.y[p]) << " ";
    out << "'/>\n";
    for (std::size_t p = 0; p < s.x.size(); ++p)
      out << "<circle cx='" << px(s.x[p]) << "' cy='" << py(s.y[p])
          << "' r='3' fill='" << color << "'/>\n";
    const double ly = top + 18.0 * i;
    out << "<line x1='" << left + plot_w + 12 << "' y1='" << ly << "' x2='"
        << left + plot_w + 34 << "' y2='" << ly << "' stroke='" << color
        << "' stroke-width='2'/>\n"
        << "<text x='" << left + plot_w + 40 << "' y='" << ly + 4
        << "' font-family='sans-serif' font-size='12'>" << s.label
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace qubocut

#endif  // QUBOCUT_SVG_HPP
