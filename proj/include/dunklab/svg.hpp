#pragma once

#include <string>
#include <vector>

namespace dunklab {

// Minimal line-chart SVG writer for the experiment reports.
class SvgChart {
 public:
  SvgChart(std::string title, std::string x_label, std::string y_label,
           bool log_x = false, bool log_y = false);

  void add_series(const std::string& name, const std::vector<double>& x,
                  const std::vector<double>& y);

  std::string to_string() const;
  void write(const std::string& path) const;

 private:
  std::string title_, x_label_, y_label_;
  bool log_x_, log_y_;
  struct Series {
    std::string name;
    std::vector<double> x, y;
  };
  std::vector<Series> series_;
};

}  // namespace dunklab
