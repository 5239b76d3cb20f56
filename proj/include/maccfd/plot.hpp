#pragma once

#include <string>

#include "maccfd/csv.hpp"

namespace maccfd {

enum class PlotKind : int {
  Convergence = 0,  // mean global-best fitness vs iteration (trace aggregates)
  Error = 1,        // normalized cumulative error vs iteration, log y (error aggregates)
  GainVsD = 2,      // two panels: SI and SoI channel gains in dB vs region size
  RateVsD = 3,      // mean min-rate vs region size, one series per scheme/mode
  RateVsPaths = 4,  // mean min-rate vs path count, one series per scheme/mode
};

const char* to_string(PlotKind kind);
PlotKind plot_kind_from_string(const std::string& s);

/// Render an aggregate table to a self-contained SVG document. Pure view of
/// the table: series points are taken verbatim (gains are displayed in dB).
/// Missing columns raise std::invalid_argument ("missing column: <name>").
/// Output bytes are a deterministic function of the input table.
std::string render_plot(const CsvTable& aggregates, PlotKind kind);

/// Read an aggregate CSV and write the rendered SVG to `out_path`.
void emit_plot(const std::string& aggregates_csv_path, PlotKind kind, const std::string& out_path);

}  // namespace maccfd
