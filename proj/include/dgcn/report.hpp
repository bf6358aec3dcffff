#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dgcn/experiment.hpp"

namespace dgcn {

struct SeriesPoint {
  double f = 0.0;
  double mean_r = 0.0;
  double sd_r = 0.0;
  std::size_t n = 0;
};

/// One plotted curve: mean R against f for a (family, mode, sweep value).
struct Series {
  std::string label;
  std::vector<SeriesPoint> points;  ///< ascending f
};

std::vector<Series> build_series(std::span<const ResultRow> rows);

/// Long-format table: series,f,mean_R,sd_R,n.
void write_series_csv(std::ostream& out, std::span<const Series> series);

/// Minimal line chart (axes, legend, one polyline per series).
void write_series_svg(std::ostream& out, std::span<const Series> series, const std::string& title);

}  // namespace dgcn
