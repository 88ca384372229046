// Experiment plumbing shared by the CLI and the acceptance binary: model
// construction from a config, single seeded runs, and resumable grids.
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqnn/datasets.hpp"
#include "eqnn/metrics.hpp"
#include "eqnn/training.hpp"

namespace eqnn {

/// Raised for invalid or unsupported experiment settings (CLI exit code 1).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ModelKind { DNN, ENN, QNN, EQNN };

const char* to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view text);
bool is_quantum(ModelKind kind);

inline constexpr double kDefaultClassicalLr = 0.1;
inline constexpr double kDefaultQuantumLr = 0.05;

struct ExperimentConfig {
  DatasetKind dataset = DatasetKind::Symmetric;
  ModelKind model = ModelKind::EQNN;

  // Quantum models: depth, 0 selects the per-dataset default.
  int depth = 0;
  // Classical models. A nonzero param_budget overrides the explicit widths:
  // DNN widths come from make_dnn_with_param_budget(budget, budget_layers),
  // the ENN from make_enn_with_param_budget. Empty widths select defaults.
  std::vector<std::size_t> hidden;
  std::size_t equivariant_width = 0;
  std::size_t param_budget = 0;
  std::size_t budget_layers = 2;
  Activation activation = Activation::Tanh;

  std::size_t n_train = 200;
  std::size_t n_test = 2000;
  int epochs = 30;
  std::size_t batch_size = 20;
  std::optional<double> lr;  // unset: 0.05 quantum, 0.1 classical
  bool eval_each_epoch = true;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::filesystem::path output_dir = "out";

  double effective_lr() const;
  TrainConfig train_config(std::uint64_t seed) const;

  /// Throws ConfigError for empty seeds, n_train = 0, bad epochs or batch
  /// size, a negative lr, or an ENN on the fully anti-symmetric dataset.
  void validate() const;

  /// Canonical one-line description of every field that affects results
  /// (the seed list and output directory excluded).
  std::string canonical() const;
};

/// Untrained model for `config`, initialized from derive_seed(seed, init).
AnyModel build_model(const ExperimentConfig& config, std::uint64_t seed);

/// Sets the architecture so the model has about `budget` parameters:
/// quantum depth = max(1, budget / params per block), classical param_budget.
ExperimentConfig with_param_budget(ExperimentConfig config, std::size_t budget);

struct RunResult {
  std::uint64_t seed = 0;
  std::size_t n_params = 0;
  double final_train_acc = 0.0;
  double final_test_acc = 0.0;
  double auc = 0.0;
  TrainTrace trace;
  RocCurve roc;
};

/// Samples train/test data, builds and trains the model, scores the test
/// set. The three random streams are derived from `seed`.
RunResult run_experiment(const ExperimentConfig& config, std::uint64_t seed);
/// Same with the model handed back trained.
RunResult run_experiment(const ExperimentConfig& config, std::uint64_t seed, AnyModel& model);
/// Trains on the given data instead of sampling it.
RunResult run_experiment(const ExperimentConfig& config, std::uint64_t seed,
                         const LabeledDataset& train_data, const LabeledDataset& test_data,
                         AnyModel& model);

/// First epoch e such that every test accuracy from e on is within `tol` of
/// the final one. Requires per-epoch evaluation.
int epochs_to_converge(const TrainTrace& trace, double tol = 0.02);

double median(std::vector<double> values);

// ---------------------------------------------------------------- grids

/// One (config, seed) training reduced to its headline numbers.
struct CellResult {
  std::size_t n_params = 0;
  double test_acc = 0.0;
  double auc = 0.0;
  int converge_epoch = 0;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view text);

/// Runs every (config, seed) job on `threads` workers. With a nonempty
/// cache_dir each job's result is stored in its own file named by the hash
/// of its canonical config and seed; existing files are reused, so an
/// interrupted grid resumes where it stopped.
struct GridJob {
  ExperimentConfig config;
  std::uint64_t seed = 0;
};
std::vector<CellResult> run_grid(const std::vector<GridJob>& jobs,
                                 const std::filesystem::path& cache_dir,
                                 unsigned threads = 0);

enum class SweepAxis { ParamCount, TrainSize };

const char* to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(std::string_view text);

struct SweepSpec {
  SweepAxis axis = SweepAxis::TrainSize;
  std::vector<std::size_t> values;
  /// The complementary fixed value: n_train for a ParamCount sweep, the
  /// parameter budget for a TrainSize sweep (0 keeps each template as is).
  std::size_t fixed = 0;
  /// One template per model series; their seeds are used.
  std::vector<ExperimentConfig> templates;

  /// Throws ConfigError unless values are nonempty and strictly increasing,
  /// templates are nonempty and each template validates.
  void validate() const;
};

struct SweepRow {
  std::size_t axis_value = 0;
  std::string model;
  std::size_t n_params = 0;
  double median_auc = 0.0;
  double auc_spread = 0.0;  // max - min over seeds
  double median_test_acc = 0.0;
  std::size_t n_seeds = 0;
};

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const std::filesystem::path& cache_dir,
                                unsigned threads = 0);
/// CSV `axis_value,model,n_params,median_auc,auc_spread,median_test_acc,n_seeds`.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// The DNN accuracy grid on the fully anti-symmetric dataset.
struct Table1 {
  std::vector<std::size_t> budgets;        // rows
  std::vector<std::size_t> n_params;       // achieved count per row
  std::vector<std::size_t> train_sizes;    // columns
  std::vector<std::vector<double>> median_acc;  // [row][column]

  double at(std::size_t budget, std::size_t n_train) const;
};

inline const std::vector<std::size_t> kTable1Budgets{105, 85, 67, 51, 37};
inline const std::vector<std::size_t> kTable1TrainSizes{100, 200, 300, 400, 500,
                                                        600, 700, 800, 900};

/// Hidden widths (h, h) of the two-layer net whose single-logit form has
/// `budget` parameters: h^2 + 5h + 1 = budget (105, 85, 67, 51, 37 give
/// h = 8..4). The 2-way softmax head carries h + 1 more, redundant,
/// parameters. Empty when no integer h solves it.
std::vector<std::size_t> table1_widths(std::size_t budget);

/// `base` supplies everything but the dataset, model, architecture and
/// n_train. Rows use table1_widths(budget), falling back to
/// make_dnn_with_param_budget(budget, base.budget_layers).
Table1 run_table1(const ExperimentConfig& base, const std::vector<std::size_t>& budgets,
                  const std::vector<std::size_t>& train_sizes,
                  const std::filesystem::path& cache_dir, unsigned threads = 0);
/// CSV `param_budget,n_params,n100,...`.
void write_table1_csv(std::ostream& out, const Table1& table);

}  // namespace eqnn
