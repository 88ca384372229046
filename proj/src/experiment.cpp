#include "eqnn/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "eqnn/csv.hpp"
#include "eqnn/random.hpp"

namespace eqnn {
namespace {

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

std::size_t params_per_block(ModelKind kind) { return kind == ModelKind::QNN ? 3 : 2; }

std::vector<std::size_t> default_dnn_hidden(DatasetKind ds) {
  if (ds == DatasetKind::Symmetric) return {4};
  return {4, 4};
}

OrbitGroup enn_group(DatasetKind ds) {
  return ds == DatasetKind::Symmetric ? OrbitGroup::Full : OrbitGroup::DiagSwapOnly;
}

}  // namespace

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::DNN: return "DNN";
    case ModelKind::ENN: return "ENN";
    case ModelKind::QNN: return "QNN";
    case ModelKind::EQNN: return "EQNN";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view text) {
  std::string up(text);
  std::transform(up.begin(), up.end(), up.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (up == "DNN") return ModelKind::DNN;
  if (up == "ENN") return ModelKind::ENN;
  if (up == "QNN") return ModelKind::QNN;
  if (up == "EQNN") return ModelKind::EQNN;
  throw ConfigError("unknown model kind '" + std::string(text) + "'");
}

bool is_quantum(ModelKind kind) { return kind == ModelKind::QNN || kind == ModelKind::EQNN; }

double ExperimentConfig::effective_lr() const {
  if (lr) return *lr;
  return is_quantum(model) ? kDefaultQuantumLr : kDefaultClassicalLr;
}

TrainConfig ExperimentConfig::train_config(std::uint64_t seed) const {
  TrainConfig t;
  t.epochs = epochs;
  t.batch_size = batch_size;
  t.lr = effective_lr();
  t.seed = seed;
  t.eval_each_epoch = eval_each_epoch;
  return t;
}

void ExperimentConfig::validate() const {
  if (seeds.empty()) throw ConfigError("seed list is empty");
  if (n_train < 1) throw ConfigError("n_train must be >= 1");
  if (n_test < 1) throw ConfigError("n_test must be >= 1");
  if (depth < 0) throw ConfigError("depth must be >= 0");
  try {
    train_config(0).validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (model == ModelKind::ENN && dataset == DatasetKind::FullyAntiSymmetric) {
    throw ConfigError(
        "unsupported combination: ENN on the fully anti-symmetric dataset (the ENN only "
        "realizes the invariant part of the symmetry)");
  }
  for (std::size_t w : hidden) {
    if (w == 0) throw ConfigError("hidden widths must be >= 1");
  }
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream s;
  s << "dataset=" << eqnn::to_string(dataset) << ";model=" << eqnn::to_string(model);
  if (is_quantum(model)) {
    s << ";depth=" << depth;
  } else {
    s << ";hidden=" << join(hidden) << ";equivariant=" << equivariant_width
      << ";budget=" << param_budget << ";budget_layers=" << budget_layers
      << ";activation=" << eqnn::to_string(activation);
  }
  s << ";n_train=" << n_train << ";n_test=" << n_test << ";epochs=" << epochs
    << ";batch=" << batch_size << ";lr=" << csv::format_double(effective_lr())
    << ";eval=" << eval_each_epoch;
  return s.str();
}

AnyModel build_model(const ExperimentConfig& config, std::uint64_t seed) {
  config.validate();
  const std::uint64_t init_seed = derive_seed(seed, kInitStream);
  switch (config.model) {
    case ModelKind::QNN:
    case ModelKind::EQNN: {
      const bool eq = config.model == ModelKind::EQNN;
      const int depth = config.depth > 0 ? config.depth
                        : eq             ? default_eqnn_depth(config.dataset)
                                         : default_qnn_depth(config.dataset);
      QuantumModel m = eq ? make_eqnn(config.dataset, depth) : make_qnn(config.dataset, depth);
      initialize_params(m, init_seed);
      return m;
    }
    case ModelKind::DNN: {
      DenseNet net = [&] {
        if (config.param_budget > 0) {
          return make_dnn_with_param_budget(config.param_budget, config.budget_layers,
                                            config.activation);
        }
        std::vector<std::size_t> sizes{2};
        const auto hidden = config.hidden.empty() ? default_dnn_hidden(config.dataset)
                                                  : config.hidden;
        sizes.insert(sizes.end(), hidden.begin(), hidden.end());
        sizes.push_back(2);
        return DenseNet(sizes, config.activation);
      }();
      net.initialize(init_seed);
      return net;
    }
    case ModelKind::ENN: {
      const OrbitGroup group = enn_group(config.dataset);
      EnnNet net = [&] {
        if (config.param_budget > 0) {
          return make_enn_with_param_budget(config.param_budget, group, config.activation);
        }
        const bool sym = config.dataset == DatasetKind::Symmetric;
        const std::size_t eq_width =
            config.equivariant_width > 0 ? config.equivariant_width : (sym ? 3 : 2);
        const auto head = config.hidden.empty() ? std::vector<std::size_t>{4} : config.hidden;
        return EnnNet(group, eq_width, head, config.activation);
      }();
      net.initialize(init_seed);
      return net;
    }
  }
  throw ConfigError("unknown model kind");
}

ExperimentConfig with_param_budget(ExperimentConfig config, std::size_t budget) {
  if (is_quantum(config.model)) {
    config.depth = static_cast<int>(std::max<std::size_t>(1, budget / params_per_block(config.model)));
  } else {
    config.param_budget = budget;
  }
  return config;
}

RunResult run_experiment(const ExperimentConfig& config, std::uint64_t seed,
                         const LabeledDataset& train_data, const LabeledDataset& test_data,
                         AnyModel& model) {
  model = build_model(config, seed);
  RunResult r;
  r.seed = seed;
  r.n_params = param_count(model);
  r.trace = train(model, train_data, test_data, config.train_config(seed));
  r.final_train_acc = r.trace.epochs.back().train_acc;
  r.final_test_acc = r.trace.epochs.back().test_acc;
  const std::vector<double> scores = score_all(model, test_data);
  const auto pos = test_data.count_positive();
  if (pos > 0 && pos < test_data.size()) {
    r.roc = roc(scores, test_data.labels);
    r.auc = auc(r.roc);
  } else {
    r.auc = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

RunResult run_experiment(const ExperimentConfig& config, std::uint64_t seed, AnyModel& model) {
  config.validate();
  const LabeledDataset train_data =
      sample(config.dataset, config.n_train, derive_seed(seed, kTrainDataStream));
  const LabeledDataset test_data =
      sample(config.dataset, config.n_test, derive_seed(seed, kTestDataStream));
  return run_experiment(config, seed, train_data, test_data, model);
}

RunResult run_experiment(const ExperimentConfig& config, std::uint64_t seed) {
  AnyModel model = build_model(config, seed);
  return run_experiment(config, seed, model);
}

int epochs_to_converge(const TrainTrace& trace, double tol) {
  if (trace.epochs.empty()) throw std::invalid_argument("empty trace");
  const double final_acc = trace.epochs.back().test_acc;
  int first = trace.epochs.back().epoch;
  for (auto it = trace.epochs.rbegin(); it != trace.epochs.rend(); ++it) {
    if (!(std::abs(it->test_acc - final_acc) <= tol)) break;
    first = it->epoch;
  }
  return first;
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

constexpr const char* kCellHeader = "n_params,test_acc,auc,converge_epoch";

std::filesystem::path cell_path(const std::filesystem::path& dir, const GridJob& job) {
  const std::string key = job.config.canonical() + ";seed=" + std::to_string(job.seed);
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.csv",
                static_cast<unsigned long long>(fnv1a(key)));
  return dir / name;
}

std::optional<CellResult> load_cell(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string header, line;
  if (!std::getline(in, header) || header != kCellHeader || !std::getline(in, line)) {
    return std::nullopt;
  }
  try {
    const auto f = csv::split_line(line);
    if (f.size() != 4) return std::nullopt;
    CellResult c;
    c.n_params = static_cast<std::size_t>(csv::parse_int(f[0]));
    c.test_acc = csv::parse_double(f[1]);
    c.auc = csv::parse_double(f[2]);
    c.converge_epoch = static_cast<int>(csv::parse_int(f[3]));
    return c;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void store_cell(const std::filesystem::path& path, const CellResult& c) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << kCellHeader << '\n'
        << c.n_params << ',' << csv::format_double(c.test_acc) << ','
        << csv::format_double(c.auc) << ',' << c.converge_epoch << '\n';
  }
  std::filesystem::rename(tmp, path);
}

CellResult compute_cell(const GridJob& job) {
  const RunResult r = run_experiment(job.config, job.seed);
  CellResult c;
  c.n_params = r.n_params;
  c.test_acc = r.final_test_acc;
  c.auc = r.auc;
  c.converge_epoch = job.config.eval_each_epoch ? epochs_to_converge(r.trace) : 0;
  return c;
}

}  // namespace

std::vector<CellResult> run_grid(const std::vector<GridJob>& jobs,
                                 const std::filesystem::path& cache_dir, unsigned threads) {
  for (const auto& job : jobs) job.config.validate();
  if (!cache_dir.empty()) std::filesystem::create_directories(cache_dir);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, jobs.size())));

  std::vector<CellResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        if (!cache_dir.empty()) {
          const auto path = cell_path(cache_dir, jobs[i]);
          if (auto cached = load_cell(path)) {
            results[i] = *cached;
            continue;
          }
          results[i] = compute_cell(jobs[i]);
          store_cell(path, results[i]);
        } else {
          results[i] = compute_cell(jobs[i]);
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return results;
}

const char* to_string(SweepAxis axis) {
  return axis == SweepAxis::ParamCount ? "param_count" : "train_size";
}

SweepAxis parse_sweep_axis(std::string_view text) {
  if (text == "param_count" || text == "ParamCount") return SweepAxis::ParamCount;
  if (text == "train_size" || text == "TrainSize") return SweepAxis::TrainSize;
  throw ConfigError("unknown sweep axis '" + std::string(text) + "'");
}

void SweepSpec::validate() const {
  if (values.empty()) throw ConfigError("sweep has no values");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] <= values[i - 1]) throw ConfigError("sweep values must be strictly increasing");
  }
  if (axis == SweepAxis::TrainSize && values.front() == 0) {
    throw ConfigError("training sizes must be >= 1");
  }
  if (templates.empty()) throw ConfigError("sweep has no model series");
  for (const auto& t : templates) t.validate();
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const std::filesystem::path& cache_dir,
                                unsigned threads) {
  spec.validate();
  struct Series {
    std::size_t value;
    std::size_t template_index;
    std::size_t first_job;
    std::size_t n_seeds;
  };
  std::vector<GridJob> jobs;
  std::vector<Series> series;
  for (std::size_t v : spec.values) {
    for (std::size_t t = 0; t < spec.templates.size(); ++t) {
      ExperimentConfig c = spec.templates[t];
      if (spec.axis == SweepAxis::ParamCount) {
        c = with_param_budget(c, v);
        if (spec.fixed > 0) c.n_train = spec.fixed;
      } else {
        c.n_train = v;
        if (spec.fixed > 0) c = with_param_budget(c, spec.fixed);
      }
      series.push_back({v, t, jobs.size(), c.seeds.size()});
      for (std::uint64_t seed : c.seeds) jobs.push_back({c, seed});
    }
  }
  const auto cells = run_grid(jobs, cache_dir, threads);

  std::vector<SweepRow> rows;
  for (const auto& s : series) {
    std::vector<double> aucs, accs;
    for (std::size_t k = 0; k < s.n_seeds; ++k) {
      aucs.push_back(cells[s.first_job + k].auc);
      accs.push_back(cells[s.first_job + k].test_acc);
    }
    SweepRow row;
    row.axis_value = s.value;
    row.model = to_string(spec.templates[s.template_index].model);
    row.n_params = cells[s.first_job].n_params;
    row.median_auc = median(aucs);
    row.auc_spread = *std::max_element(aucs.begin(), aucs.end()) -
                     *std::min_element(aucs.begin(), aucs.end());
    row.median_test_acc = median(accs);
    row.n_seeds = s.n_seeds;
    rows.push_back(row);
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "axis_value,model,n_params,median_auc,auc_spread,median_test_acc,n_seeds\n";
  for (const auto& r : rows) {
    out << r.axis_value << ',' << r.model << ',' << r.n_params << ','
        << csv::format_double(r.median_auc) << ',' << csv::format_double(r.auc_spread) << ','
        << csv::format_double(r.median_test_acc) << ',' << r.n_seeds << '\n';
  }
}

double Table1::at(std::size_t budget, std::size_t n_train) const {
  const auto r = std::find(budgets.begin(), budgets.end(), budget);
  const auto c = std::find(train_sizes.begin(), train_sizes.end(), n_train);
  if (r == budgets.end() || c == train_sizes.end()) throw std::out_of_range("no such Table 1 cell");
  return median_acc[static_cast<std::size_t>(r - budgets.begin())]
                   [static_cast<std::size_t>(c - train_sizes.begin())];
}

std::vector<std::size_t> table1_widths(std::size_t budget) {
  for (std::size_t h = 1; h * h + 5 * h + 1 <= budget; ++h) {
    if (h * h + 5 * h + 1 == budget) return {h, h};
  }
  return {};
}

Table1 run_table1(const ExperimentConfig& base, const std::vector<std::size_t>& budgets,
                  const std::vector<std::size_t>& train_sizes,
                  const std::filesystem::path& cache_dir, unsigned threads) {
  std::vector<GridJob> jobs;
  for (std::size_t b : budgets) {
    for (std::size_t n : train_sizes) {
      ExperimentConfig c = base;
      c.dataset = DatasetKind::FullyAntiSymmetric;
      c.model = ModelKind::DNN;
      c.hidden = table1_widths(b);
      c.param_budget = c.hidden.empty() ? b : 0;
      c.n_train = n;
      for (std::uint64_t seed : c.seeds) jobs.push_back({c, seed});
    }
  }
  if (base.seeds.empty()) throw ConfigError("seed list is empty");
  const auto cells = run_grid(jobs, cache_dir, threads);

  Table1 t;
  t.budgets = budgets;
  t.train_sizes = train_sizes;
  const std::size_t k = base.seeds.size();
  std::size_t job = 0;
  for (std::size_t r = 0; r < budgets.size(); ++r) {
    t.n_params.push_back(cells[job].n_params);
    std::vector<double> row;
    for (std::size_t c = 0; c < train_sizes.size(); ++c) {
      std::vector<double> accs;
      for (std::size_t s = 0; s < k; ++s) accs.push_back(cells[job++].test_acc);
      row.push_back(median(accs));
    }
    t.median_acc.push_back(row);
  }
  return t;
}

void write_table1_csv(std::ostream& out, const Table1& table) {
  out << "param_budget,n_params";
  for (std::size_t n : table.train_sizes) out << ",n" << n;
  out << '\n';
  for (std::size_t r = 0; r < table.budgets.size(); ++r) {
    out << table.budgets[r] << ',' << table.n_params[r];
    for (double a : table.median_acc[r]) out << ',' << csv::format_double(a);
    out << '\n';
  }
}

}  // namespace eqnn
