#include "kemst/trace_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "kemst/errors.hpp"
#include "kemst/format.hpp"

namespace kemst {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 240.0;
constexpr double kMargin = 48.0;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string escape_xml(const std::string& s) {
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

// Fixed-width label text; plots are not byte-compared so rounding is fine.
std::string short_number(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

}  // namespace

std::string event_trace_csv(const EventTrace& trace) {
  std::string out = "time,event_type,tree_length,opt_length,ratio,displacement_since_ref\n";
  for (const EventRecord& r : trace.records) {
    out += format_double(r.time) + ',' + to_string(r.type) + ',' + format_double(r.tree_length) + ',' +
           format_double(r.opt_length) + ',' + format_double(r.ratio) + ',' + format_double(r.displacement_since_ref) +
           '\n';
  }
  return out;
}

std::string topo_trace_csv(const TopoTrace& trace) {
  std::string out = "time,event_type,tree_length,opt_length,ratio\n";
  for (const TopoRecord& r : trace.records) {
    out += format_double(r.time) + ',' + to_string(r.type) + ',' + format_double(r.tree_length) + ',' +
           format_double(r.opt_length) + ',' + format_double(r.ratio) + '\n';
  }
  return out;
}

std::string lipschitz_trace_csv(const LipschitzResult& result) {
  std::string out = "time,active_slides,completed_slides,tree_length,opt_length,ratio\n";
  for (const LipschitzRecord& r : result.records) {
    out += format_double(r.time) + ',' + std::to_string(r.active_slides) + ',' + std::to_string(r.completed_slides) +
           ',' + format_double(r.tree_length) + ',' + format_double(r.opt_length) + ',' + format_double(r.ratio) +
           '\n';
  }
  return out;
}

std::string svg_plot(const std::string& title, const std::string& x_label, const std::vector<PlotSeries>& series) {
  const double panel = kHeight + kMargin;
  const double total_height = kMargin + panel * static_cast<double>(series.size());
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth + 2 * kMargin << "\" height=\""
      << total_height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<text x=\"" << kMargin << "\" y=\"20\" font-size=\"14\">" << escape_xml(title) << "</text>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const PlotSeries& ps = series[s];
    const double top = kMargin + panel * static_cast<double>(s);
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (std::size_t i = 0; i < ps.x.size() && i < ps.y.size(); ++i) {
      if (!std::isfinite(ps.x[i]) || !std::isfinite(ps.y[i])) continue;
      x0 = std::min(x0, ps.x[i]);
      x1 = std::max(x1, ps.x[i]);
      y0 = std::min(y0, ps.y[i]);
      y1 = std::max(y1, ps.y[i]);
    }
    if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x1 <= x0) x1 = x0 + 1;
    if (y1 <= y0) y1 = y0 + 1;
    auto px = [&](double x) { return kMargin + (x - x0) / (x1 - x0) * kWidth; };
    auto py = [&](double y) { return top + kHeight - (y - y0) / (y1 - y0) * kHeight; };
    svg << "<rect x=\"" << kMargin << "\" y=\"" << top << "\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"none\" stroke=\"#888\"/>\n";
    svg << "<text x=\"" << kMargin << "\" y=\"" << top - 6 << "\">" << escape_xml(ps.name) << " vs " << escape_xml(x_label)
        << "</text>\n";
    svg << "<text x=\"4\" y=\"" << top + 10 << "\">" << short_number(y1) << "</text>\n";
    svg << "<text x=\"4\" y=\"" << top + kHeight << "\">" << short_number(y0) << "</text>\n";
    svg << "<text x=\"" << kMargin << "\" y=\"" << top + kHeight + 14 << "\">" << short_number(x0) << "</text>\n";
    svg << "<text x=\"" << kMargin + kWidth - 30 << "\" y=\"" << top + kHeight + 14 << "\">" << short_number(x1)
        << "</text>\n";
    svg << "<polyline fill=\"none\" stroke=\"" << kColors[s % 4] << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < ps.x.size() && i < ps.y.size(); ++i) {
      if (!std::isfinite(ps.x[i]) || !std::isfinite(ps.y[i])) continue;
      svg << short_number(px(ps.x[i])) << ',' << short_number(py(ps.y[i])) << ' ';
    }
    svg << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::vector<PlotSeries> plot_series(const EventTrace& trace) {
  PlotSeries ratio{"ratio", {}, {}}, length{"tree_length", {}, {}};
  for (const EventRecord& r : trace.records) {
    ratio.x.push_back(r.time);
    ratio.y.push_back(r.ratio);
    length.x.push_back(r.time);
    length.y.push_back(r.tree_length);
  }
  return {ratio, length};
}

std::vector<PlotSeries> plot_series(const TopoTrace& trace) {
  PlotSeries ratio{"ratio", {}, {}}, length{"tree_length", {}, {}};
  for (const TopoRecord& r : trace.records) {
    ratio.x.push_back(r.time);
    ratio.y.push_back(r.ratio);
    length.x.push_back(r.time);
    length.y.push_back(r.tree_length);
  }
  return {ratio, length};
}

std::vector<PlotSeries> plot_series(const LipschitzResult& result) {
  PlotSeries ratio{"ratio", {}, {}}, length{"tree_length", {}, {}};
  for (const LipschitzRecord& r : result.records) {
    ratio.x.push_back(r.time);
    ratio.y.push_back(r.ratio);
    length.x.push_back(r.time);
    length.y.push_back(r.tree_length);
  }
  return {ratio, length};
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot write " + path);
  out << text;
  if (!out) throw ParameterError("write failed for " + path);
}

}  // namespace kemst
