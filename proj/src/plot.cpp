#include "maccfd/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "maccfd/channel.hpp"

namespace maccfd {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
constexpr int kPaletteSize = 8;

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

struct Series {
  std::string label;
  bool dashed = false;  // HD curves are dashed, CCFD solid
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> y_err;  // optional, same length as y when non-empty
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  std::vector<Series> series;
};

double nice_step(double range, int target_ticks) {
  if (!(range > 0.0)) return 1.0;
  const double raw = range / std::max(1, target_ticks - 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  double step;
  if (norm < 1.5) step = 1.0;
  else if (norm < 3.0) step = 2.0;
  else if (norm < 7.0) step = 5.0;
  else step = 10.0;
  return step * mag;
}

/// Renders one panel into `out` at vertical offset `y0`. Geometry constants
/// are fixed so equal inputs produce identical bytes.
void render_panel(std::string& out, const Panel& panel, double y0, double width, double height) {
  const double ml = 78.0, mr = 16.0, mt = 34.0, mb = 52.0;
  const double x_lo_px = ml, x_hi_px = width - mr;
  const double y_lo_px = y0 + height - mb, y_hi_px = y0 + mt;

  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  for (const Series& s : panel.series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      double y = s.y[i];
      double lo = y, hi = y;
      if (!s.y_err.empty()) {
        lo = y - s.y_err[i];
        hi = y + s.y_err[i];
      }
      if (panel.log_y) {
        if (!(y > 0.0)) continue;  // log scale shows positive values only
        y = std::log10(y);
        lo = hi = y;  // error bars are omitted on the log axis
      }
      x_min = std::min(x_min, s.x[i]);
      x_max = std::max(x_max, s.x[i]);
      y_min = std::min(y_min, lo);
      y_max = std::max(y_max, hi);
    }
  }
  if (!(x_min <= x_max) || !(y_min <= y_max)) {
    throw std::invalid_argument("plot has no drawable data points");
  }
  if (x_max == x_min) {
    x_min -= 0.5;
    x_max += 0.5;
  }
  if (y_max == y_min) {
    y_min -= 0.5;
    y_max += 0.5;
  }
  // headroom so markers and the legend do not sit on the frame
  const double y_pad = 0.08 * (y_max - y_min);
  y_min -= y_pad;
  y_max += y_pad;

  auto px = [&](double x) { return x_lo_px + (x - x_min) / (x_max - x_min) * (x_hi_px - x_lo_px); };
  auto py = [&](double y) { return y_lo_px - (y - y_min) / (y_max - y_min) * (y_lo_px - y_hi_px); };

  // frame
  out += "<rect x=\"" + fmt(x_lo_px) + "\" y=\"" + fmt(y_hi_px) + "\" width=\"" +
         fmt(x_hi_px - x_lo_px) + "\" height=\"" + fmt(y_lo_px - y_hi_px) +
         "\" fill=\"#ffffff\" stroke=\"#222222\" stroke-width=\"1\"/>\n";

  // x ticks
  const double xs = nice_step(x_max - x_min, 7);
  for (double t = std::ceil(x_min / xs - 1e-9) * xs; t <= x_max + 1e-9 * xs; t += xs) {
    const double X = px(t);
    out += "<line x1=\"" + fmt(X) + "\" y1=\"" + fmt(y_hi_px) + "\" x2=\"" + fmt(X) + "\" y2=\"" +
           fmt(y_lo_px) + "\" stroke=\"#dddddd\" stroke-width=\"0.7\"/>\n";
    out += "<line x1=\"" + fmt(X) + "\" y1=\"" + fmt(y_lo_px) + "\" x2=\"" + fmt(X) + "\" y2=\"" +
           fmt(y_lo_px + 5) + "\" stroke=\"#222222\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + fmt(X) + "\" y=\"" + fmt(y_lo_px + 19) +
           "\" font-size=\"12\" text-anchor=\"middle\" fill=\"#222222\">" + fmt(t + 0.0) + "</text>\n";
  }

  // y ticks
  if (panel.log_y) {
    const int lo_exp = static_cast<int>(std::floor(y_min));
    const int hi_exp = static_cast<int>(std::ceil(y_max));
    for (int e = lo_exp; e <= hi_exp; ++e) {
      if (e < y_min - 1e-9 || e > y_max + 1e-9) continue;
      const double Y = py(e);
      out += "<line x1=\"" + fmt(x_lo_px) + "\" y1=\"" + fmt(Y) + "\" x2=\"" + fmt(x_hi_px) +
             "\" y2=\"" + fmt(Y) + "\" stroke=\"#dddddd\" stroke-width=\"0.7\"/>\n";
      out += "<text x=\"" + fmt(x_lo_px - 8) + "\" y=\"" + fmt(Y + 4) +
             "\" font-size=\"12\" text-anchor=\"end\" fill=\"#222222\">1e" + std::to_string(e) +
             "</text>\n";
    }
  } else {
    const double ys = nice_step(y_max - y_min, 6);
    for (double t = std::ceil(y_min / ys - 1e-9) * ys; t <= y_max + 1e-9 * ys; t += ys) {
      const double Y = py(t);
      out += "<line x1=\"" + fmt(x_lo_px) + "\" y1=\"" + fmt(Y) + "\" x2=\"" + fmt(x_hi_px) +
             "\" y2=\"" + fmt(Y) + "\" stroke=\"#dddddd\" stroke-width=\"0.7\"/>\n";
      out += "<text x=\"" + fmt(x_lo_px - 8) + "\" y=\"" + fmt(Y + 4) +
             "\" font-size=\"12\" text-anchor=\"end\" fill=\"#222222\">" + fmt(t + 0.0) + "</text>\n";
    }
  }

  // series
  for (std::size_t si = 0; si < panel.series.size(); ++si) {
    const Series& s = panel.series[si];
    const char* color = kPalette[si % kPaletteSize];
    std::string points;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (panel.log_y && !(s.y[i] > 0.0)) continue;
      const double Y = panel.log_y ? std::log10(s.y[i]) : s.y[i];
      if (!points.empty()) points += " ";
      points += fmt(px(s.x[i])) + "," + fmt(py(Y));
      if (!panel.log_y && !s.y_err.empty() && s.y_err[i] > 0.0) {
        const double X = px(s.x[i]);
        const double yl = py(s.y[i] - s.y_err[i]);
        const double yh = py(s.y[i] + s.y_err[i]);
        out += "<line x1=\"" + fmt(X) + "\" y1=\"" + fmt(yl) + "\" x2=\"" + fmt(X) + "\" y2=\"" +
               fmt(yh) + "\" stroke=\"" + color + "\" stroke-width=\"1\"/>\n";
        out += "<line x1=\"" + fmt(X - 3) + "\" y1=\"" + fmt(yl) + "\" x2=\"" + fmt(X + 3) +
               "\" y2=\"" + fmt(yl) + "\" stroke=\"" + color + "\" stroke-width=\"1\"/>\n";
        out += "<line x1=\"" + fmt(X - 3) + "\" y1=\"" + fmt(yh) + "\" x2=\"" + fmt(X + 3) +
               "\" y2=\"" + fmt(yh) + "\" stroke=\"" + color + "\" stroke-width=\"1\"/>\n";
      }
    }
    out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.8\"";
    if (s.dashed) out += " stroke-dasharray=\"7,4\"";
    out += " points=\"" + points + "\"/>\n";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (panel.log_y && !(s.y[i] > 0.0)) continue;
      const double Y = panel.log_y ? std::log10(s.y[i]) : s.y[i];
      out += "<circle cx=\"" + fmt(px(s.x[i])) + "\" cy=\"" + fmt(py(Y)) + "\" r=\"2.6\" fill=\"" +
             color + "\"/>\n";
    }
  }

  // legend (top-right, inside the frame)
  const double lx = x_hi_px - 190.0;
  double ly = y_hi_px + 14.0;
  for (std::size_t si = 0; si < panel.series.size(); ++si) {
    const Series& s = panel.series[si];
    const char* color = kPalette[si % kPaletteSize];
    out += "<line x1=\"" + fmt(lx) + "\" y1=\"" + fmt(ly) + "\" x2=\"" + fmt(lx + 26) + "\" y2=\"" +
           fmt(ly) + "\" stroke=\"" + color + "\" stroke-width=\"1.8\"";
    if (s.dashed) out += " stroke-dasharray=\"7,4\"";
    out += "/>\n";
    out += "<text x=\"" + fmt(lx + 32) + "\" y=\"" + fmt(ly + 4) +
           "\" font-size=\"12\" fill=\"#222222\">" + xml_escape(s.label) + "</text>\n";
    ly += 17.0;
  }

  // titles and axis labels
  out += "<text x=\"" + fmt((x_lo_px + x_hi_px) / 2) + "\" y=\"" + fmt(y_hi_px - 12) +
         "\" font-size=\"14\" text-anchor=\"middle\" fill=\"#222222\">" + xml_escape(panel.title) +
         "</text>\n";
  out += "<text x=\"" + fmt((x_lo_px + x_hi_px) / 2) + "\" y=\"" + fmt(y_lo_px + 40) +
         "\" font-size=\"13\" text-anchor=\"middle\" fill=\"#222222\">" + xml_escape(panel.x_label) +
         "</text>\n";
  out += "<text x=\"" + fmt(x_lo_px - 58) + "\" y=\"" + fmt((y_lo_px + y_hi_px) / 2) +
         "\" font-size=\"13\" text-anchor=\"middle\" fill=\"#222222\" transform=\"rotate(-90 " +
         fmt(x_lo_px - 58) + " " + fmt((y_lo_px + y_hi_px) / 2) + ")\">" +
         xml_escape(panel.y_label) + "</text>\n";
}

std::string render_panels(const std::vector<Panel>& panels) {
  const double width = 760.0, panel_height = 470.0;
  const double height = panel_height * static_cast<double>(panels.size());
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" +
         fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) +
         "\" font-family=\"Helvetica,Arial,sans-serif\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + fmt(width) + "\" height=\"" + fmt(height) +
         "\" fill=\"#ffffff\"/>\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    render_panel(out, panels[i], panel_height * static_cast<double>(i), width, panel_height);
  }
  out += "</svg>\n";
  return out;
}

/// Ordered per-iteration series keyed by (sweep_value, mode), from the trace
/// or error aggregate tables.
std::vector<Series> iteration_series(const CsvTable& t, const std::string& value_column) {
  const std::size_t c_sweep = t.column_index("sweep_value");
  const std::size_t c_mode = t.column_index("mode");
  const std::size_t c_iter = t.column_index("iteration");
  const std::size_t c_val = t.column_index(value_column);

  // Sweep values only appear in labels when more than one is present.
  std::vector<double> distinct;
  for (const auto& row : t.rows) {
    const double v = parse_double(row[c_sweep]);
    if (std::find(distinct.begin(), distinct.end(), v) == distinct.end()) distinct.push_back(v);
  }
  const bool label_sweep = distinct.size() > 1;

  std::vector<Series> series;
  std::map<std::pair<double, std::string>, std::size_t> index;
  for (const auto& row : t.rows) {
    const double sweep_value = parse_double(row[c_sweep]);
    const std::string& mode = row[c_mode];
    const auto key = std::make_pair(sweep_value, mode);
    auto it = index.find(key);
    if (it == index.end()) {
      Series s;
      s.label = "MA-PPSO " + mode;
      if (label_sweep) s.label += " @ " + fmt(sweep_value);
      s.dashed = mode == "HD";
      index.emplace(key, series.size());
      series.push_back(std::move(s));
      it = index.find(key);
    }
    Series& s = series[it->second];
    s.x.push_back(parse_double(row[c_iter]));
    s.y.push_back(parse_double(row[c_val]));
  }
  return series;
}

/// Ordered series keyed by (scheme, mode) from the results aggregate table.
std::vector<Series> scheme_series(const CsvTable& t, const std::string& value_column,
                                  const std::string& stderr_column) {
  const std::size_t c_sweep = t.column_index("sweep_value");
  const std::size_t c_scheme = t.column_index("scheme");
  const std::size_t c_mode = t.column_index("mode");
  const std::size_t c_val = t.column_index(value_column);
  const std::size_t c_err = stderr_column.empty() ? 0 : t.column_index(stderr_column);

  std::vector<Series> series;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  for (const auto& row : t.rows) {
    const auto key = std::make_pair(row[c_scheme], row[c_mode]);
    auto it = index.find(key);
    if (it == index.end()) {
      Series s;
      s.label = row[c_scheme] + " " + row[c_mode];
      s.dashed = row[c_mode] == "HD";
      index.emplace(key, series.size());
      series.push_back(std::move(s));
      it = index.find(key);
    }
    Series& s = series[it->second];
    s.x.push_back(parse_double(row[c_sweep]));
    s.y.push_back(parse_double(row[c_val]));
    if (!stderr_column.empty()) s.y_err.push_back(parse_double(row[c_err]));
  }
  return series;
}

/// dB view of one gain column, one series per (scheme, mode).
std::vector<Series> gain_series(const CsvTable& t, const std::string& column,
                                const std::string& suffix) {
  std::vector<Series> series = scheme_series(t, column, "");
  for (Series& s : series) {
    s.label += " " + suffix;
    for (double& y : s.y) y = linear_to_db(y);
  }
  return series;
}

}  // namespace

const char* to_string(PlotKind kind) {
  switch (kind) {
    case PlotKind::Convergence: return "convergence";
    case PlotKind::Error: return "error";
    case PlotKind::GainVsD: return "gain_vs_d";
    case PlotKind::RateVsD: return "rate_vs_d";
    case PlotKind::RateVsPaths: return "rate_vs_paths";
  }
  throw std::invalid_argument("unknown plot kind");
}

PlotKind plot_kind_from_string(const std::string& s) {
  if (s == "convergence") return PlotKind::Convergence;
  if (s == "error") return PlotKind::Error;
  if (s == "gain_vs_d") return PlotKind::GainVsD;
  if (s == "rate_vs_d") return PlotKind::RateVsD;
  if (s == "rate_vs_paths") return PlotKind::RateVsPaths;
  throw std::invalid_argument("unknown plot kind: " + s);
}

std::string render_plot(const CsvTable& aggregates, PlotKind kind) {
  std::vector<Panel> panels;
  switch (kind) {
    case PlotKind::Convergence: {
      Panel p;
      p.title = "Convergence of the global best";
      p.x_label = "Iteration index k";
      p.y_label = "Min achievable rate (bits/s/Hz)";
      p.series = iteration_series(aggregates, "mean_global_best");
      panels.push_back(std::move(p));
      break;
    }
    case PlotKind::Error: {
      Panel p;
      p.title = "Normalized cumulative error";
      p.x_label = "Iteration index k";
      p.y_label = "Normalized cumulative error";
      p.log_y = true;
      p.series = iteration_series(aggregates, "mean_error");
      panels.push_back(std::move(p));
      break;
    }
    case PlotKind::GainVsD: {
      Panel si;
      si.title = "SI channel gain at the optimized layout";
      si.x_label = "Moving region size D (wavelengths)";
      si.y_label = "SI channel gain (dB)";
      si.series = gain_series(aggregates, "mean_si_gain_aa", "|h_AA|^2");
      for (Series& s : gain_series(aggregates, "mean_si_gain_bb", "|h_BB|^2")) {
        si.series.push_back(std::move(s));
      }
      Panel soi;
      soi.title = "SoI channel gain at the optimized layout";
      soi.x_label = "Moving region size D (wavelengths)";
      soi.y_label = "SoI channel gain (dB)";
      soi.series = gain_series(aggregates, "mean_soi_gain_ab", "|h_AB|^2");
      for (Series& s : gain_series(aggregates, "mean_soi_gain_ba", "|h_BA|^2")) {
        soi.series.push_back(std::move(s));
      }
      panels.push_back(std::move(si));
      panels.push_back(std::move(soi));
      break;
    }
    case PlotKind::RateVsD: {
      Panel p;
      p.title = "Minimum achievable rate vs moving region size";
      p.x_label = "Moving region size D (wavelengths)";
      p.y_label = "Min achievable rate (bits/s/Hz)";
      p.series = scheme_series(aggregates, "mean_fitness", "stderr_fitness");
      panels.push_back(std::move(p));
      break;
    }
    case PlotKind::RateVsPaths: {
      Panel p;
      p.title = "Minimum achievable rate vs number of paths";
      p.x_label = "Number of paths";
      p.y_label = "Min achievable rate (bits/s/Hz)";
      p.series = scheme_series(aggregates, "mean_fitness", "stderr_fitness");
      panels.push_back(std::move(p));
      break;
    }
  }
  for (const Panel& p : panels) {
    if (p.series.empty()) throw std::invalid_argument("plot input has no data rows");
  }
  return render_panels(panels);
}

void emit_plot(const std::string& aggregates_csv_path, PlotKind kind, const std::string& out_path) {
  const CsvTable table = read_csv(aggregates_csv_path);
  const std::string svg = render_plot(table, kind);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write plot file: " + out_path);
  out << svg;
  if (!out) throw std::runtime_error("failed writing plot file: " + out_path);
}

}  // namespace maccfd
