#include "eqnn/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "eqnn/csv.hpp"

namespace eqnn {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 160.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                               "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void fit_range(double& lo, double& hi, const std::vector<Series>& series, bool use_x) {
  if (lo < hi) return;
  lo = INFINITY;
  hi = -INFINITY;
  for (const auto& s : series) {
    for (double v : use_x ? s.x : s.y) {
      if (!std::isfinite(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!(lo <= hi)) {
    lo = 0.0;
    hi = 1.0;
  }
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
}

}  // namespace

std::string render_svg(const std::vector<Series>& series, const PlotOptions& options) {
  if (series.empty()) throw std::invalid_argument("plot has no series");
  for (const auto& s : series) {
    if (s.x.empty()) throw std::invalid_argument("series '" + s.name + "' is empty");
    if (s.x.size() != s.y.size()) {
      throw std::invalid_argument("series '" + s.name + "' has mismatched x and y lengths");
    }
  }
  double x_lo = options.x_lo, x_hi = options.x_hi, y_lo = options.y_lo, y_hi = options.y_hi;
  fit_range(x_lo, x_hi, series, true);
  fit_range(y_lo, y_hi, series, false);

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const auto sx = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * pw; };
  const auto sy = [&](double y) { return kTop + ph - (y - y_lo) / (y_hi - y_lo) * ph; };

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(kWidth)
    << "\" height=\"" << num(kHeight) << "\" viewBox=\"0 0 " << num(kWidth) << ' '
    << num(kHeight) << "\">\n"
    << "<rect x=\"0\" y=\"0\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
    << "\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    o << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << escape(options.title) << "</text>\n";
  }

  // Frame and ticks.
  o << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw)
    << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = x_lo + (x_hi - x_lo) * i / kTicks;
    const double fy = y_lo + (y_hi - y_lo) * i / kTicks;
    o << "<line x1=\"" << num(sx(fx)) << "\" y1=\"" << num(kTop + ph) << "\" x2=\""
      << num(sx(fx)) << "\" y2=\"" << num(kTop + ph + 5) << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << num(sx(fx)) << "\" y=\"" << num(kTop + ph + 20)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << tick_label(fx) << "</text>\n"
      << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(sy(fy)) << "\" x2=\""
      << num(kLeft) << "\" y2=\"" << num(sy(fy)) << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(sy(fy) + 4)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
      << tick_label(fy) << "</text>\n";
  }
  o << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 15)
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
    << escape(options.x_label) << "</text>\n"
    << "<text x=\"18\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" "
    << "font-family=\"sans-serif\" font-size=\"14\" transform=\"rotate(-90 18 "
    << num(kTop + ph / 2) << ")\">" << escape(options.y_label) << "</text>\n";

  if (options.diagonal) {
    const double lo = std::max(x_lo, y_lo), hi = std::min(x_hi, y_hi);
    if (lo < hi) {
      o << "<line x1=\"" << num(sx(lo)) << "\" y1=\"" << num(sy(lo)) << "\" x2=\""
        << num(sx(hi)) << "\" y2=\"" << num(sy(hi))
        << "\" stroke=\"#999999\" stroke-dasharray=\"4 4\"/>\n";
    }
  }

  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = kColors[k % std::size(kColors)];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < series[k].x.size(); ++i) {
      if (!std::isfinite(series[k].x[i]) || !std::isfinite(series[k].y[i])) continue;
      if (!first) o << ' ';
      first = false;
      o << num(sx(series[k].x[i])) << ',' << num(sy(series[k].y[i]));
    }
    o << "\"/>\n";
    const double ly = kTop + 10 + 20.0 * static_cast<double>(k);
    const double lx = kWidth - kRight + 15;
    o << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 25)
      << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
      << "<text x=\"" << num(lx + 32) << "\" y=\"" << num(ly + 4)
      << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(series[k].name)
      << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

PlotKind parse_plot_kind(std::string_view text) {
  if (text == "roc") return PlotKind::Roc;
  if (text == "acc_epoch") return PlotKind::AccEpoch;
  if (text == "auc_sweep") return PlotKind::AucSweep;
  throw std::invalid_argument("unknown plot kind '" + std::string(text) + "'");
}

PlotOptions default_plot_options(PlotKind kind) {
  PlotOptions o;
  switch (kind) {
    case PlotKind::Roc:
      o.title = "ROC";
      o.x_label = "false positive rate";
      o.y_label = "true positive rate";
      o.x_hi = o.y_hi = 1.0;
      o.diagonal = true;
      break;
    case PlotKind::AccEpoch:
      o.title = "Accuracy";
      o.x_label = "epoch";
      o.y_label = "accuracy";
      o.y_lo = 0.4;
      o.y_hi = 1.0;
      break;
    case PlotKind::AucSweep:
      o.title = "AUC";
      o.x_label = "sweep value";
      o.y_label = "median AUC";
      break;
  }
  return o;
}

std::vector<Series> load_plot_series(PlotKind kind,
                                     const std::vector<std::filesystem::path>& inputs) {
  if (inputs.empty()) throw std::runtime_error("no input files");
  std::vector<Series> out;
  for (const auto& path : inputs) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    const csv::Table t = csv::read(in);
    const auto text_col = [&](const std::string& name) {
      const std::size_t c = t.column(name);
      std::vector<std::string> v;
      for (const auto& row : t.rows) v.push_back(row[c]);
      return v;
    };
    const auto col = [&](const std::string& name) {
      std::vector<double> v;
      for (const auto& f : text_col(name)) v.push_back(csv::parse_double(f));
      return v;
    };
    const std::string stem = path.stem().string();
    switch (kind) {
      case PlotKind::Roc:
        out.push_back({stem, col("fpr"), col("tpr")});
        break;
      case PlotKind::AccEpoch: {
        const auto epoch = col("epoch");
        out.push_back({stem + " train", epoch, col("train_acc")});
        out.push_back({stem + " test", epoch, col("test_acc")});
        break;
      }
      case PlotKind::AucSweep: {
        const auto x = col("axis_value");
        const auto y = col("median_auc");
        const auto models = text_col("model");
        std::vector<std::string> order;
        std::map<std::string, Series> by_model;
        for (std::size_t i = 0; i < models.size(); ++i) {
          auto [it, inserted] = by_model.try_emplace(models[i], Series{models[i], {}, {}});
          if (inserted) order.push_back(models[i]);
          it->second.x.push_back(x[i]);
          it->second.y.push_back(y[i]);
        }
        for (const auto& m : order) out.push_back(by_model.at(m));
        break;
      }
    }
  }
  for (const auto& s : out) {
    if (s.x.empty()) throw std::runtime_error("series '" + s.name + "' is empty");
  }
  return out;
}

}  // namespace eqnn
