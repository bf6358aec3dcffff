#include "dgcn/report.hpp"

#include <algorithm>
#include <map>
#include <ostream>

namespace dgcn {

std::vector<Series> build_series(std::span<const ResultRow> rows) {
  std::vector<Series> out;
  std::map<std::string, std::size_t> index;
  for (const auto& s : summarize(rows)) {
    std::string label = std::string(family_name(s.family)) + "/" + std::string(attack_mode_name(s.mode));
    if (s.sweep_value) label += "/" + s.sweep_param + "=" + format_number(*s.sweep_value);
    auto [it, fresh] = index.try_emplace(label, out.size());
    if (fresh) out.push_back({label, {}});
    out[it->second].points.push_back({s.f, s.mean_r, s.sd_r, s.n});
  }
  for (auto& s : out) {
    std::sort(s.points.begin(), s.points.end(), [](const auto& a, const auto& b) { return a.f < b.f; });
  }
  return out;
}

void write_series_csv(std::ostream& out, std::span<const Series> series) {
  out << "series,f,mean_R,sd_R,n\n";
  for (const auto& s : series)
    for (const auto& p : s.points)
      out << s.label << ',' << format_number(p.f) << ',' << format_number(p.mean_r) << ',' << format_number(p.sd_r)
          << ',' << p.n << '\n';
}

void write_series_svg(std::ostream& out, std::span<const Series> series, const std::string& title) {
  constexpr double kWidth = 640, kHeight = 420, kLeft = 60, kRight = 200, kTop = 40, kBottom = 50;
  constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                      "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  double f_max = 0.0;
  for (const auto& s : series)
    for (const auto& p : s.points) f_max = std::max(f_max, p.f);
  if (f_max <= 0.0) f_max = 1.0;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto x = [&](double f) { return kLeft + plot_w * f / f_max; };
  auto y = [&](double r) { return kTop + plot_h * (1.0 - std::clamp(r, 0.0, 1.0)); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kLeft << "\" y=\"24\" font-size=\"14\">" << title << "</text>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w << "\" y2=\""
      << kTop + plot_h << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + plot_h
      << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double r = t / 4.0;
    const double f = f_max * t / 4.0;
    out << "<text x=\"" << kLeft - 36 << "\" y=\"" << y(r) + 4 << "\" font-size=\"11\">" << format_number(r)
        << "</text>\n";
    out << "<text x=\"" << x(f) - 10 << "\" y=\"" << kTop + plot_h + 18 << "\" font-size=\"11\">"
        << format_number(f) << "</text>\n";
  }
  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 10 << "\" font-size=\"12\">f</text>\n";
  out << "<text x=\"12\" y=\"" << kTop + plot_h / 2 << "\" font-size=\"12\">R</text>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % std::size(kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : series[i].points) out << x(p.f) << ',' << y(p.mean_r) << ' ';
    out << "\"/>\n";
    for (const auto& p : series[i].points)
      out << "<circle cx=\"" << x(p.f) << "\" cy=\"" << y(p.mean_r) << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    const double ly = kTop + 14.0 * static_cast<double>(i);
    out << "<line x1=\"" << kWidth - kRight + 10 << "\" y1=\"" << ly << "\" x2=\"" << kWidth - kRight + 30
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kWidth - kRight + 36 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">" << series[i].label
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace dgcn
