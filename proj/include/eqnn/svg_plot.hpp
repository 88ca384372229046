// Minimal standalone SVG 1.1 line plots: axes, ticks, one polyline per
// series and a legend. Output bytes depend only on the input values.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace eqnn {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  // Axis ranges; when lo >= hi the range is fitted to the data.
  double x_lo = 0.0, x_hi = 0.0;
  double y_lo = 0.0, y_hi = 0.0;
  bool diagonal = false;  // dashed y = x reference line
};

/// Throws std::invalid_argument if there are no series, a series is empty,
/// or x and y lengths differ.
std::string render_svg(const std::vector<Series>& series, const PlotOptions& options);

enum class PlotKind { Roc, AccEpoch, AucSweep };

PlotKind parse_plot_kind(std::string_view text);

/// Reads the CSV inputs for a plot kind:
///   roc        one `threshold,fpr,tpr` file per series, named by file stem
///   acc_epoch  `epoch,train_acc,test_acc,...` files; train and test series each
///   auc_sweep  one sweep CSV; one median-AUC series per model
/// Throws std::runtime_error on missing files or malformed CSV.
std::vector<Series> load_plot_series(PlotKind kind,
                                     const std::vector<std::filesystem::path>& inputs);
PlotOptions default_plot_options(PlotKind kind);

}  // namespace eqnn
