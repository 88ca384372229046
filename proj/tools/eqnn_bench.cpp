// Command-line runner for the benchmark: dataset generation, single
// trainings, sweeps, the DNN accuracy table, plots and the self-checks.
//
// Exit codes: 0 success, 1 configuration or I/O error, 2 verification failure.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "eqnn/checkpoint.hpp"
#include "eqnn/config.hpp"
#include "eqnn/csv.hpp"
#include "eqnn/datasets.hpp"
#include "eqnn/experiment.hpp"
#include "eqnn/metrics.hpp"
#include "eqnn/svg_plot.hpp"
#include "eqnn/verification.hpp"

namespace fs = std::filesystem;
using namespace eqnn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitVerify = 2;

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

struct GenerateArgs {
  std::string kind = "sym";
  std::size_t n = 200;
  std::uint64_t seed = 1;
  fs::path out = "dataset.csv";
};

int cmd_generate(const GenerateArgs& a) {
  const LabeledDataset data = sample(parse_dataset_kind(a.kind), a.n, a.seed);
  auto out = open_out(a.out);
  write_dataset_csv(out, data);
  const std::size_t pos = data.count_positive();
  std::printf("%s: %zu points, class 1: %zu (%.4f), class 0: %zu\n", a.out.c_str(), data.size(),
              pos, static_cast<double>(pos) / static_cast<double>(data.size()),
              data.size() - pos);
  return kExitOk;
}

struct TrainArgs {
  std::string config;
  std::string dataset, model;
  int depth = -1;
  std::optional<double> lr;
  int epochs = 0;
  std::vector<std::uint64_t> seeds;
  std::string out_dir;
  std::string train_data, test_data;
};

ExperimentConfig resolve(const TrainArgs& a) {
  ExperimentConfig c = a.config.empty() ? ExperimentConfig{} : load_experiment_config(a.config);
  if (!a.dataset.empty()) c.dataset = parse_dataset_kind(a.dataset);
  if (!a.model.empty()) c.model = parse_model_kind(a.model);
  if (a.depth >= 0) c.depth = a.depth;
  if (a.lr) c.lr = a.lr;
  if (a.epochs > 0) c.epochs = a.epochs;
  if (!a.seeds.empty()) c.seeds = a.seeds;
  if (!a.out_dir.empty()) c.output_dir = a.out_dir;
  c.validate();
  return c;
}

int cmd_train(const TrainArgs& a) {
  const ExperimentConfig c = resolve(a);
  if (a.train_data.empty() != a.test_data.empty()) {
    throw ConfigError("--train-data and --test-data must be given together");
  }
  fs::create_directories(c.output_dir);
  for (std::uint64_t seed : c.seeds) {
    AnyModel model = build_model(c, seed);
    RunResult r;
    if (!a.train_data.empty()) {
      const LabeledDataset train = read_dataset_csv(fs::path(a.train_data), c.dataset);
      const LabeledDataset test = read_dataset_csv(fs::path(a.test_data), c.dataset);
      r = run_experiment(c, seed, train, test, model);
    } else {
      r = run_experiment(c, seed, model);
    }
    const std::string stem = std::string(to_string(c.model)) + "_" + to_string(c.dataset) +
                             "_seed" + std::to_string(seed);
    {
      auto out = open_out(c.output_dir / (stem + "_trace.csv"));
      write_trace_csv(out, r.trace);
    }
    write_checkpoint(c.output_dir / (stem + ".ckpt"), model);
    if (r.roc.size() > 0) {
      auto out = open_out(c.output_dir / (stem + "_roc.csv"));
      write_roc_csv(out, r.roc);
    }
    std::printf("%s seed %llu: params %zu, train acc %.4f, test acc %.4f, AUC %.4f\n",
                to_string(c.model), static_cast<unsigned long long>(seed), r.n_params,
                r.final_train_acc, r.final_test_acc, r.auc);
  }
  return kExitOk;
}

struct SweepArgs {
  std::string config;
  fs::path out = "sweep.csv";
  fs::path cache_dir = "sweep_cells";
  unsigned threads = 0;
};

int cmd_sweep(const SweepArgs& a) {
  const SweepSpec spec = load_sweep_spec(a.config);
  const auto rows = run_sweep(spec, a.cache_dir, a.threads);
  auto out = open_out(a.out);
  write_sweep_csv(out, rows);
  write_sweep_csv(std::cout, rows);
  return kExitOk;
}

struct Table1Args {
  std::string config;
  fs::path out = "table1.csv";
  fs::path cache_dir = "table1_cells";
  unsigned threads = 0;
  std::vector<std::uint64_t> seeds;
};

int cmd_table1(const Table1Args& a) {
  ExperimentConfig base = a.config.empty() ? ExperimentConfig{} : load_experiment_config(a.config);
  base.eval_each_epoch = false;
  if (!a.seeds.empty()) base.seeds = a.seeds;
  const Table1 t = run_table1(base, kTable1Budgets, kTable1TrainSizes, a.cache_dir, a.threads);
  auto out = open_out(a.out);
  write_table1_csv(out, t);
  write_table1_csv(std::cout, t);
  return kExitOk;
}

struct PlotArgs {
  std::string kind = "roc";
  std::vector<std::string> inputs;
  fs::path out = "plot.svg";
  std::string title;
};

int cmd_plot(const PlotArgs& a) {
  const PlotKind kind = parse_plot_kind(a.kind);
  std::vector<fs::path> inputs(a.inputs.begin(), a.inputs.end());
  PlotOptions options = default_plot_options(kind);
  if (!a.title.empty()) options.title = a.title;
  const std::string svg = render_svg(load_plot_series(kind, inputs), options);
  auto out = open_out(a.out);
  out << svg;
  return kExitOk;
}

int cmd_verify(std::uint64_t seed) {
  auto results = run_symmetry_suite(seed);
  const auto grad = run_gradient_suite(seed);
  const auto aucs = run_auc_suite(seed);
  results.insert(results.end(), grad.begin(), grad.end());
  results.insert(results.end(), aucs.begin(), aucs.end());
  print_report(std::cout, results);
  const bool ok = all_passed(results);
  std::cout << (ok ? "all checks passed\n" : "verification FAILED\n");
  return ok ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetric-dataset benchmark for equivariant quantum and classical classifiers"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Sample a labeled dataset to CSV");
  g->add_option("--kind", gen.kind, "sym | anti | full")->capture_default_str();
  g->add_option("-n", gen.n, "Number of points")->capture_default_str();
  g->add_option("--seed", gen.seed, "Sampling seed")->capture_default_str();
  g->add_option("-o,--out", gen.out, "Output CSV")->capture_default_str();

  TrainArgs tr;
  auto* t = app.add_subcommand("train", "Train one model per seed; write trace, ROC, checkpoint");
  t->add_option("-c,--config", tr.config, "Experiment INI file");
  t->add_option("--dataset", tr.dataset, "sym | anti | full");
  t->add_option("--model", tr.model, "DNN | ENN | QNN | EQNN");
  t->add_option("--depth", tr.depth, "Quantum circuit depth (0: default)");
  t->add_option("--lr", tr.lr, "Learning rate");
  t->add_option("--epochs", tr.epochs, "Epochs");
  t->add_option("--seeds", tr.seeds, "Seeds")->delimiter(',');
  t->add_option("--out-dir", tr.out_dir, "Output directory");
  t->add_option("--train-data", tr.train_data, "Training CSV instead of sampling");
  t->add_option("--test-data", tr.test_data, "Test CSV instead of sampling");

  SweepArgs sw;
  auto* s = app.add_subcommand("sweep", "Median AUC over seeds along a parameter or size axis");
  s->add_option("-c,--config", sw.config, "Sweep INI file")->required();
  s->add_option("-o,--out", sw.out, "Aggregated CSV")->capture_default_str();
  s->add_option("--cache-dir", sw.cache_dir, "Per-cell result directory")->capture_default_str();
  s->add_option("--threads", sw.threads, "Worker threads (0: all cores)");

  Table1Args tb;
  auto* b = app.add_subcommand("table1", "DNN accuracy grid on the fully anti-symmetric dataset");
  b->add_option("-c,--config", tb.config, "Experiment INI file (training settings)");
  b->add_option("-o,--out", tb.out, "Output CSV")->capture_default_str();
  b->add_option("--cache-dir", tb.cache_dir, "Per-cell result directory")->capture_default_str();
  b->add_option("--threads", tb.threads, "Worker threads (0: all cores)");
  b->add_option("--seeds", tb.seeds, "Seeds")->delimiter(',');

  PlotArgs pl;
  auto* p = app.add_subcommand("plot", "Render CSV results as an SVG line plot");
  p->add_option("--kind", pl.kind, "roc | acc_epoch | auc_sweep")->capture_default_str();
  p->add_option("-o,--out", pl.out, "Output SVG")->capture_default_str();
  p->add_option("--title", pl.title, "Plot title");
  p->add_option("inputs", pl.inputs, "Input CSV files")->required();

  std::uint64_t verify_seed = 1;
  auto* v = app.add_subcommand("verify", "Run the symmetry, gradient and AUC self-checks");
  v->add_option("--seed", verify_seed, "Seed for random samples")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*g) return cmd_generate(gen);
    if (*t) return cmd_train(tr);
    if (*s) return cmd_sweep(sw);
    if (*b) return cmd_table1(tb);
    if (*p) return cmd_plot(pl);
    if (*v) return cmd_verify(verify_seed);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return kExitConfig;
}
