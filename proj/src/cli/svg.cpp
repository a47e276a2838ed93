#include "chaoskit/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <vector>

#include "chaoskit/error.hpp"

namespace chaoskit::cli {

namespace {

constexpr double kWidth = 640.0, kHeight = 440.0;
constexpr double kLeft = 70.0, kRight = 20.0, kTop = 30.0, kBottom = 50.0;
constexpr const char* kGenerator = "chaoskit-svg 1";
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

struct Frame {
  double x0, x1, y0, y1;

  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
  double py(double y) const { return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom); }
};

void widen(double& lo, double& hi) {
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
}

std::string header(const std::string& title) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<!-- generator: " + std::string(kGenerator) +
         " -->\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) + "\" height=\"" +
         fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) + " " + fmt(kHeight) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" "
         "fill=\"white\"/>\n<text x=\"" +
         fmt(kWidth / 2) + "\" y=\"18\" text-anchor=\"middle\">" + title + "</text>\n";
}

std::string axes(const Frame& f, const std::string& xlabel, const std::string& ylabel, bool xlog,
                 bool ylog) {
  std::string s;
  s += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" + fmt(kWidth - kLeft - kRight) +
       "\" height=\"" + fmt(kHeight - kTop - kBottom) + "\" fill=\"none\" stroke=\"black\"/>\n";
  auto ticks = [](double lo, double hi) {
    const double span = hi - lo;
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
      if (raw <= m * mag) {
        step = m * mag;
        break;
      }
    std::vector<double> t;
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step)
      t.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
    return t;
  };
  for (double v : ticks(f.x0, f.x1)) {
    const double x = f.px(v);
    s += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(kHeight - kBottom) + "\" x2=\"" + fmt(x) + "\" y2=\"" +
         fmt(kHeight - kBottom + 5) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(kHeight - kBottom + 18) + "\" text-anchor=\"middle\">" +
         (xlog ? "1e" : "") + fmt_tick(v) + "</text>\n";
  }
  for (double v : ticks(f.y0, f.y1)) {
    const double y = f.py(v);
    s += "<line x1=\"" + fmt(kLeft - 5) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(kLeft) + "\" y2=\"" + fmt(y) +
         "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fmt(kLeft - 8) + "\" y=\"" + fmt(y + 4) + "\" text-anchor=\"end\">" +
         (ylog ? "1e" : "") + fmt_tick(v) + "</text>\n";
  }
  s += "<text x=\"" + fmt((kLeft + kWidth - kRight) / 2) + "\" y=\"" + fmt(kHeight - 12) +
       "\" text-anchor=\"middle\">" + xlabel + "</text>\n";
  s += "<text x=\"16\" y=\"" + fmt((kTop + kHeight - kBottom) / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
       fmt((kTop + kHeight - kBottom) / 2) + ")\">" + ylabel + "</text>\n";
  return s;
}

std::string polyline(const Frame& f, const std::vector<std::pair<double, double>>& pts, const char* color) {
  if (pts.empty()) return {};
  std::string s = "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"";
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (k) s += ' ';
    s += fmt(f.px(pts[k].first)) + "," + fmt(f.py(pts[k].second));
  }
  return s + "\"/>\n";
}

std::string legend(const std::vector<std::pair<std::string, const char*>>& items) {
  std::string s;
  double y = kTop + 14;
  for (const auto& [label, color] : items) {
    s += "<rect x=\"" + fmt(kWidth - kRight - 150) + "\" y=\"" + fmt(y - 9) +
         "\" width=\"10\" height=\"10\" fill=\"" + color + "\"/>\n";
    s += "<text x=\"" + fmt(kWidth - kRight - 135) + "\" y=\"" + fmt(y) + "\">" + label + "</text>\n";
    y += 16;
  }
  return s;
}

std::string render_orbit(const Table& t) {
  const std::size_t nc = t.column("n");
  if (t.columns.size() < 2) throw Error(ErrorCode::InvalidArgument, "orbit table needs a norm column");
  std::vector<std::vector<std::pair<double, double>>> series;
  std::vector<std::pair<std::string, const char*>> labels;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c == nc) continue;
    std::vector<std::pair<double, double>> pts;
    for (const auto& row : t.rows) {
      const double n = parse_real(row[nc]), v = parse_real(row[c]);
      x0 = std::min(x0, n);
      x1 = std::max(x1, n);
      if (!(v > 0.0) || !std::isfinite(v)) continue;
      const double lv = std::log10(v);
      y0 = std::min(y0, lv);
      y1 = std::max(y1, lv);
      pts.emplace_back(n, lv);
    }
    labels.emplace_back(t.columns[c], kPalette[series.size() % std::size(kPalette)]);
    series.push_back(std::move(pts));
  }
  if (!std::isfinite(y0)) y0 = -1.0, y1 = 1.0;
  widen(x0, x1);
  widen(y0, y1);
  const Frame f{x0, x1, y0, y1};
  std::string s = header(t.name) + axes(f, "n", "norm", false, true);
  for (std::size_t k = 0; k < series.size(); ++k) s += polyline(f, series[k], labels[k].second);
  return s + legend(labels) + "</svg>\n";
}

const char* verdict_color(const std::string& v) {
  static const std::map<std::string, const char*> colors{{"decay", "#4c78a8"},
                                                         {"bounded_below", "#b8c2cc"},
                                                         {"chaotic", "#d1495b"},
                                                         {"boundary_uncertain", "#f2c14e"}};
  const auto it = colors.find(v);
  return it == colors.end() ? "#555555" : it->second;
}

std::string render_map(const Table& t) {
  const std::size_t rc = t.column("re"), ic = t.column("im"), vc = t.column("verdict");
  std::vector<double> res, ims;
  for (const auto& row : t.rows) {
    res.push_back(parse_real(row[rc]));
    ims.push_back(parse_real(row[ic]));
  }
  auto distinct = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  const auto ur = distinct(res), ui = distinct(ims);
  const double hx = ur.size() > 1 ? (ur.back() - ur.front()) / static_cast<double>(ur.size() - 1) : 1.0;
  const double hy = ui.size() > 1 ? (ui.back() - ui.front()) / static_cast<double>(ui.size() - 1) : 1.0;
  const Frame f{ur.front() - hx / 2, ur.back() + hx / 2, ui.front() - hy / 2, ui.back() + hy / 2};
  std::string s = header(t.name);
  const double w = f.px(f.x0 + hx) - f.px(f.x0), h = f.py(f.y0) - f.py(f.y0 + hy);
  for (std::size_t k = 0; k < t.rows.size(); ++k) {
    s += "<rect x=\"" + fmt(f.px(res[k] - hx / 2)) + "\" y=\"" + fmt(f.py(ims[k] + hy / 2)) + "\" width=\"" +
         fmt(w) + "\" height=\"" + fmt(h) + "\" fill=\"" + verdict_color(t.rows[k][vc]) + "\"/>\n";
  }
  s += axes(f, "Re lambda", "Im lambda", false, false);
  std::vector<std::pair<std::string, const char*>> items;
  for (const char* v : {"decay", "bounded_below", "chaotic", "boundary_uncertain"})
    items.emplace_back(v, verdict_color(v));
  return s + legend(items) + "</svg>\n";
}

std::string render_profile(const Table& t) {
  const std::size_t tc = t.column("tau"), lc = t.column("f_lower"), uc = t.column("f_upper");
  std::vector<std::pair<double, double>> lo, up;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
  for (const auto& row : t.rows) {
    const double tau = parse_real(row[tc]);
    if (!(tau > 0.0)) continue;
    const double lt = std::log10(tau);
    x0 = std::min(x0, lt);
    x1 = std::max(x1, lt);
    lo.emplace_back(lt, parse_real(row[lc]));
    up.emplace_back(lt, parse_real(row[uc]));
  }
  if (!std::isfinite(x0)) x0 = -1.0, x1 = 1.0;
  widen(x0, x1);
  const Frame f{x0, x1, -0.02, 1.02};
  std::string s = header(t.name) + axes(f, "tau", "fraction of times below tau", true, false);
  s += polyline(f, lo, kPalette[0]) + polyline(f, up, kPalette[1]);
  return s + legend({{"f_lower", kPalette[0]}, {"f_upper", kPalette[1]}}) + "</svg>\n";
}

}  // namespace

std::string_view to_string(PlotKind k) noexcept {
  switch (k) {
    case PlotKind::Orbit: return "orbit";
    case PlotKind::Map: return "map";
    case PlotKind::Profile: return "profile";
  }
  return "unknown";
}

PlotKind parse_plot_kind(std::string_view name) {
  for (PlotKind k : {PlotKind::Orbit, PlotKind::Map, PlotKind::Profile})
    if (name == to_string(k)) return k;
  throw Error(ErrorCode::InvalidConfig, "unknown plot kind '" + std::string(name) + "'");
}

std::string render_svg(const Table& table, PlotKind kind) {
  if (table.empty()) throw Error(ErrorCode::IoError, "refusing to plot empty table '" + table.name + "'");
  switch (kind) {
    case PlotKind::Orbit: return render_orbit(table);
    case PlotKind::Map: return render_map(table);
    case PlotKind::Profile: return render_profile(table);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown plot kind");
}

void emit_plot(const Table& table, PlotKind kind, const std::filesystem::path& path) {
  write_file(path, render_svg(table, kind));
}

}  // namespace chaoskit::cli
