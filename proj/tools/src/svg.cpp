#include "oneharm_cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

namespace oneharm::cli {
namespace {

constexpr double width = 720, height = 480;
constexpr double left = 80, right = 170, top = 40, bottom = 60;
constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                   "#17becf", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22"};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  double lo = 0.0, hi = 1.0;
  bool log = false;

  double map(double v) const {
    const double a = log ? std::log10(v) : v;
    return (a - lo) / (hi - lo);
  }
  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      for (double e = std::ceil(lo); e <= std::floor(hi) + 1e-9; ++e) out.push_back(std::pow(10.0, e));
      return out;
    }
    const double raw = (hi - lo) / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
      if (m * mag >= raw) {
        step = m * mag;
        break;
      }
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step)
      out.push_back(std::fabs(v) < 1e-12 * step ? 0.0 : v);
    return out;
  }
};

Axis make_axis(double lo, double hi, bool log) {
  Axis a;
  a.log = log;
  if (log) {
    lo = std::log10(lo);
    hi = std::log10(hi);
  }
  if (!(hi > lo)) {
    const double pad = std::max(std::fabs(lo) * 0.05, 1e-12);
    lo -= pad;
    hi += pad;
  } else {
    const double pad = 0.03 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
  a.lo = lo;
  a.hi = hi;
  return a;
}

bool usable(double v, bool log) { return std::isfinite(v) && (!log || v > 0.0); }

}  // namespace

std::string to_svg(const Table& t, const PlotSpec& plot) {
  const std::size_t xc = t.column(plot.x);
  std::vector<std::size_t> ycs;
  for (const auto& y : plot.y) ycs.push_back(t.column(y));
  const bool grouped = !plot.group.empty();
  const std::size_t gc = grouped ? t.column(plot.group) : 0;

  // Curves keyed by (group label, y column), in first-appearance order.
  std::vector<std::string> labels;
  std::map<std::string, std::vector<std::pair<double, double>>> curves;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const double x = t.number(r, xc);
    if (!usable(x, plot.log_x)) continue;
    std::string gl;
    if (grouped) {
      const double g = t.number(r, gc);
      gl = plot.group + "=" + (std::isnan(g) ? std::get<std::string>(t.rows[r][gc]) : num(g));
    }
    for (std::size_t k = 0; k < ycs.size(); ++k) {
      const double y = t.number(r, ycs[k]);
      if (!usable(y, plot.log_y)) continue;
      std::string label = plot.y[k];
      if (grouped) label = gl + " " + label;
      if (!curves.count(label)) labels.push_back(label);
      curves[label].emplace_back(x, y);
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(plot.title)
     << "</text>\n";
  const double pw = width - left - right, ph = height - top - bottom;
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  if (labels.empty()) {
    os << "<text x=\"" << left + pw / 2 << "\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\">no data</text>\n";
    os << "</svg>\n";
    return os.str();
  }
  const Axis ax = make_axis(xmin, xmax, plot.log_x), ay = make_axis(ymin, ymax, plot.log_y);
  auto px = [&](double x) { return left + ax.map(x) * pw; };
  auto py = [&](double y) { return top + (1.0 - ay.map(y)) * ph; };

  for (double v : ax.ticks()) {
    const double x = px(v);
    os << "<line x1=\"" << num(x) << "\" y1=\"" << top + ph << "\" x2=\"" << num(x) << "\" y2=\"" << top + ph + 5
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << num(x) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">" << num(v) << "</text>\n";
  }
  for (double v : ay.ticks()) {
    const double y = py(v);
    os << "<line x1=\"" << left - 5 << "\" y1=\"" << num(y) << "\" x2=\"" << left << "\" y2=\"" << num(y)
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << left - 8 << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">" << num(v) << "</text>\n";
  }
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\">"
     << escape(plot.x + (plot.log_x ? " (log)" : "")) << "</text>\n";

  for (std::size_t i = 0; i < labels.size(); ++i) {
    const char* color = palette[i % std::size(palette)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& [x, y] : curves[labels[i]]) {
      os << (first ? "" : " ") << num(px(x)) << ',' << num(py(y));
      first = false;
    }
    os << "\"/>\n";
    const double ly = top + 14 + 16 * static_cast<double>(i);
    os << "<line x1=\"" << left + pw + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << left + pw + 30 << "\" y2=\""
       << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << left + pw + 35 << "\" y=\"" << ly << "\">" << escape(labels[i]) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace oneharm::cli
