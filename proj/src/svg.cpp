#include "dunklab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "dunklab/csv.hpp"
#include "dunklab/common.hpp"

namespace dunklab {

namespace {
constexpr double kW = 840, kH = 520;
constexpr double kL = 70, kR = 180, kT = 40, kB = 55;
const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}
}  // namespace

SvgChart::SvgChart(std::string title, std::string x_label, std::string y_label,
                   bool log_x, bool log_y)
    : title_(std::move(title)),
      x_label_(std::move(x_label)),
      y_label_(std::move(y_label)),
      log_x_(log_x),
      log_y_(log_y) {}

void SvgChart::add_series(const std::string& name, const std::vector<double>& x,
                          const std::vector<double>& y) {
  series_.push_back({name, x, y});
}

std::string SvgChart::to_string() const {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  auto tx = [&](double v) { return log_x_ ? std::log10(std::max(v, 1e-300)) : v; };
  auto ty = [&](double v) { return log_y_ ? std::log10(std::max(v, 1e-300)) : v; };
  for (const auto& s : series_)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (log_y_ && s.y[i] <= 0) continue;
      xmin = std::min(xmin, tx(s.x[i]));
      xmax = std::max(xmax, tx(s.x[i]));
      ymin = std::min(ymin, ty(s.y[i]));
      ymax = std::max(ymax, ty(s.y[i]));
    }
  if (xmin > xmax) { xmin = 0; xmax = 1; }
  if (ymin > ymax) { ymin = 0; ymax = 1; }
  if (xmax - xmin < 1e-12) { xmax += 0.5; xmin -= 0.5; }
  if (ymax - ymin < 1e-12) { ymax += 0.5; ymin -= 0.5; }

  auto px = [&](double v) {
    return kL + (tx(v) - xmin) / (xmax - xmin) * (kW - kL - kR);
  };
  auto py = [&](double v) {
    return kH - kB - (ty(v) - ymin) / (ymax - ymin) * (kH - kT - kB);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
      << "\" height=\"" << kH << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << title_ << "</text>\n";
  // axes
  out << "<line x1=\"" << kL << "\" y1=\"" << kH - kB << "\" x2=\"" << kW - kR
      << "\" y2=\"" << kH - kB << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kL << "\" y1=\"" << kT << "\" x2=\"" << kL
      << "\" y2=\"" << kH - kB << "\" stroke=\"black\"/>\n";
  // ticks: 5 per axis
  for (int i = 0; i <= 4; ++i) {
    const double fx = xmin + (xmax - xmin) * i / 4.0;
    const double fy = ymin + (ymax - ymin) * i / 4.0;
    const double vx = log_x_ ? std::pow(10.0, fx) : fx;
    const double vy = log_y_ ? std::pow(10.0, fy) : fy;
    const double X = kL + (kW - kL - kR) * i / 4.0;
    const double Y = kH - kB - (kH - kT - kB) * i / 4.0;
    out << "<text x=\"" << num(X) << "\" y=\"" << kH - kB + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << CsvTable::format_double(vx) << "</text>\n";
    out << "<text x=\"" << kL - 8 << "\" y=\"" << num(Y + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << CsvTable::format_double(vy) << "</text>\n";
  }
  out << "<text x=\"" << (kL + kW - kR) / 2 << "\" y=\"" << kH - 14
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << x_label_ << "</text>\n";
  out << "<text x=\"18\" y=\"" << (kT + kH - kB) / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 18 " << (kT + kH - kB) / 2 << ")\">" << y_label_
      << "</text>\n";

  for (std::size_t s = 0; s < series_.size(); ++s) {
    const auto& ser = series_[s];
    const char* color = kColors[s % 8];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < ser.x.size(); ++i) {
      if (log_y_ && ser.y[i] <= 0) continue;
      out << num(px(ser.x[i])) << "," << num(py(ser.y[i])) << " ";
    }
    out << "\"/>\n";
    const double ly = kT + 18.0 * static_cast<double>(s);
    out << "<line x1=\"" << kW - kR + 10 << "\" y1=\"" << ly + 10 << "\" x2=\""
        << kW - kR + 34 << "\" y2=\"" << ly + 10 << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kW - kR + 40 << "\" y=\"" << ly + 14
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << ser.name
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void SvgChart::write(const std::string& path) const {
  write_text_file(path, to_string());
}

}  // namespace dunklab
