#include "fuzzprob/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fuzzprob/csv.hpp"
#include "fuzzprob/error.hpp"

namespace fuzzprob {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 80;
constexpr double kRight = 150;
constexpr double kTop = 30;
constexpr double kBottom = 60;

constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c",
                                                "#ff7f0e", "#9467bd", "#8c564b"};

std::string num(double v) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(2);
  s << v;
  return s.str();
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
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

// Decade-aligned log10 range covering [lo, hi].
std::pair<double, double> decades(double lo, double hi) {
  double a = std::floor(std::log10(lo));
  double b = std::ceil(std::log10(hi));
  if (a == b) b = a + 1;
  return {a, b};
}

}  // namespace

std::string render_svg_lineplot(const std::vector<BenchRow>& rows) {
  if (rows.empty()) throw DomainError("nothing to plot");
  const auto series = median_series(rows);

  double n_lo = INFINITY, n_hi = 0, e_lo = INFINITY, e_hi = 0;
  for (const auto& s : series) {
    for (std::size_t k = 0; k < s.n.size(); ++k) {
      n_lo = std::min(n_lo, s.n[k]);
      n_hi = std::max(n_hi, s.n[k]);
      if (s.median_error[k] > 0) {
        e_lo = std::min(e_lo, s.median_error[k]);
        e_hi = std::max(e_hi, s.median_error[k]);
      }
    }
  }
  if (!(e_hi > 0)) {  // only exact backends
    e_lo = 1e-3;
    e_hi = 1e-1;
  }
  n_lo = std::max(n_lo, 1.0);
  const auto [xa, xb] = decades(n_lo, std::max(n_hi, n_lo));
  const auto [ya, yb] = decades(e_lo, e_hi);

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double n) { return kLeft + (std::log10(std::max(n, 1.0)) - xa) / (xb - xa) * plot_w; };
  auto py = [&](double e) {
    const double le = e > 0 ? std::clamp(std::log10(e), ya, yb) : ya;
    return kTop + (yb - le) / (yb - ya) * plot_h;
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n"
      << "<g font-family=\"sans-serif\" font-size=\"12\">\n";

  // Axes, decade ticks and labels.
  svg << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(plot_w)
      << "\" height=\"" << num(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double d = xa; d <= xb; d += 1) {
    const double x = px(std::pow(10.0, d));
    svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop + plot_h) << "\" x2=\"" << num(x)
        << "\" y2=\"" << num(kTop + plot_h + 5) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + plot_h + 20)
        << "\" text-anchor=\"middle\">1e" << static_cast<int>(d) << "</text>\n";
  }
  for (double d = ya; d <= yb; d += 1) {
    const double y = py(std::pow(10.0, d));
    svg << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft)
        << "\" y2=\"" << num(y) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + 4)
        << "\" text-anchor=\"end\">1e" << static_cast<int>(d) << "</text>\n";
  }
  svg << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 15)
      << "\" text-anchor=\"middle\">N (samples)</text>\n"
      << "<text x=\"20\" y=\"" << num(kTop + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << num(kTop + plot_h / 2) << ")\">L∞ error</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto* color = kColors[s % kColors.size()];
    svg << "<polyline class=\"series\" data-backend=\"" << escape(series[s].backend)
        << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < series[s].n.size(); ++k) {
      if (k > 0) svg << ' ';
      svg << num(px(series[s].n[k])) << ',' << num(py(series[s].median_error[k]));
    }
    svg << "\"/>\n";
  }

  svg << "<g class=\"legend\">\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const double y = kTop + 15 + 20 * static_cast<double>(s);
    const double x = kLeft + plot_w + 15;
    svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(y) << "\" x2=\"" << num(x + 25) << "\" y2=\""
        << num(y) << "\" stroke=\"" << kColors[s % kColors.size()] << "\" stroke-width=\"2\"/>\n"
        << "<text class=\"legend-entry\" x=\"" << num(x + 32) << "\" y=\"" << num(y + 4) << "\">"
        << escape(series[s].backend) << "</text>\n";
  }
  svg << "</g>\n</g>\n</svg>\n";
  return svg.str();
}

void emit_svg_lineplot(const std::vector<BenchRow>& rows, const std::string& path) {
  const auto text = render_svg_lineplot(rows);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path + ": " + std::strerror(errno));
  out << text;
  out.flush();
  if (!out) throw std::runtime_error(path + ": " + std::strerror(errno));
}

}  // namespace fuzzprob
