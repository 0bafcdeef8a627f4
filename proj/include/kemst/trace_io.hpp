#pragma once

#include <string>
#include <vector>

#include "kemst/event_stability.hpp"
#include "kemst/lipschitz.hpp"
#include "kemst/morph.hpp"

namespace kemst {

// CSV traces; doubles use the shortest round-trip form, so equal runs give
// equal bytes.
std::string event_trace_csv(const EventTrace& trace);
std::string topo_trace_csv(const TopoTrace& trace);
std::string lipschitz_trace_csv(const LipschitzResult& result);

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

// Minimal SVG line plot: one polyline per series, axes with min/max labels.
std::string svg_plot(const std::string& title, const std::string& x_label, const std::vector<PlotSeries>& series);

// Two-panel data for a trace: time vs. ratio and time vs. tree_length.
std::vector<PlotSeries> plot_series(const EventTrace& trace);
std::vector<PlotSeries> plot_series(const TopoTrace& trace);
std::vector<PlotSeries> plot_series(const LipschitzResult& result);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace kemst
