// Prints one PASS/FAIL line per acceptance criterion. The exit status is 0
// whenever every check ran; failures are reported, not fatal.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "eqnn/experiment.hpp"
#include "eqnn/verification.hpp"

using namespace eqnn;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int id, bool passed, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", passed ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* format, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, a);
  return buf;
}

void criterion_headline() {
  const auto start = Clock::now();
  ExperimentConfig c;
  c.dataset = DatasetKind::FullyAntiSymmetric;
  c.model = ModelKind::EQNN;
  c.depth = 10;
  c.eval_each_epoch = false;
  std::vector<double> accs;
  std::size_t n_params = 0;
  for (std::uint64_t seed : c.seeds) {
    const RunResult r = run_experiment(c, seed);
    accs.push_back(r.final_test_acc);
    n_params = r.n_params;
  }
  const double med = median(accs);
  const double secs = seconds_since(start);
  report(1, med >= 0.90 && n_params == 20 && secs < 300.0,
         "EQNN depth 10 (" + std::to_string(n_params) + " params) fully anti-symmetric, median test acc " +
             fmt("%.4f", med) + " (>= 0.90), " + fmt("%.1f s", secs));
}

void criterion_table1() {
  ExperimentConfig base;
  base.eval_each_epoch = false;
  const Table1 t = run_table1(base, {105, 37}, {100, 900}, {}, 0);
  struct Cell {
    std::size_t budget, n_train;
    double target, tol;
  };
  const Cell cells[] = {{105, 900, 0.988, 0.05}, {105, 100, 0.764, 0.08}, {37, 900, 0.952, 0.05}};
  bool passed = true;
  std::string detail = "DNN fully anti-symmetric";
  for (const Cell& c : cells) {
    const double got = t.at(c.budget, c.n_train);
    const bool ok = std::abs(got - c.target) <= c.tol;
    passed &= ok;
    char buf[160];
    std::snprintf(buf, sizeof buf, "; (%zu, %zu) %.4f vs %.3f +- %.2f %s", c.budget, c.n_train, got,
                  c.target, c.tol, ok ? "ok" : "miss");
    detail += buf;
  }
  report(2, passed, detail);
}

void criteria_ordering_and_convergence() {
  std::map<ModelKind, double> auc, epochs;
  std::map<ModelKind, std::size_t> params;
  for (ModelKind m : {ModelKind::EQNN, ModelKind::QNN, ModelKind::DNN, ModelKind::ENN}) {
    ExperimentConfig c;
    c.dataset = DatasetKind::Symmetric;
    c.model = m;
    std::vector<double> aucs, conv;
    for (std::uint64_t seed : c.seeds) {
      const RunResult r = run_experiment(c, seed);
      aucs.push_back(r.auc);
      conv.push_back(epochs_to_converge(r.trace, 0.02));
      params[m] = r.n_params;
    }
    auc[m] = median(aucs);
    epochs[m] = median(conv);
  }
  const double slack = 0.01;
  const bool ordered = auc[ModelKind::EQNN] + slack >= auc[ModelKind::QNN] &&
                       auc[ModelKind::ENN] + slack >= auc[ModelKind::DNN] &&
                       auc[ModelKind::EQNN] + slack >= auc[ModelKind::DNN];
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "symmetric median AUC EQNN(%zu) %.4f, QNN(%zu) %.4f, DNN(%zu) %.4f, ENN(%zu) %.4f; "
                "EQNN >= QNN, ENN >= DNN, EQNN >= DNN with slack 0.01",
                params[ModelKind::EQNN], auc[ModelKind::EQNN], params[ModelKind::QNN],
                auc[ModelKind::QNN], params[ModelKind::DNN], auc[ModelKind::DNN],
                params[ModelKind::ENN], auc[ModelKind::ENN]);
  report(3, ordered, buf);

  const double quantum = std::max(epochs[ModelKind::EQNN], epochs[ModelKind::QNN]);
  const double classical = std::min(epochs[ModelKind::DNN], epochs[ModelKind::ENN]);
  std::snprintf(buf, sizeof buf,
                "median epochs to within 0.02 of final test acc EQNN %.1f, QNN %.1f, DNN %.1f, "
                "ENN %.1f; max quantum %.1f <= min classical %.1f",
                epochs[ModelKind::EQNN], epochs[ModelKind::QNN], epochs[ModelKind::DNN],
                epochs[ModelKind::ENN], quantum, classical);
  report(4, quantum <= classical, buf);
}

std::string suite_detail(const std::vector<CheckResult>& results, double secs) {
  // Expected-mismatch checks pass with an error above their tolerance.
  std::size_t failed = 0, mismatches = 0;
  double worst = 0.0;
  for (const auto& r : results) {
    failed += !r.passed;
    if (r.passed && r.error > r.tolerance) {
      ++mismatches;
    } else {
      worst = std::max(worst, r.error);
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%zu checks (%zu expected mismatches), %zu failed, worst identity error %.3g, %.2f s",
                results.size(), mismatches, failed, worst, secs);
  return buf;
}

void criterion_suite(int id, const char* name, double budget_s,
                     std::vector<CheckResult> (*run)()) {
  const auto start = Clock::now();
  const auto results = run();
  const double secs = seconds_since(start);
  for (const auto& r : results) {
    if (!r.passed) std::printf("  failed: %s (error %.3g)\n", r.name.c_str(), r.error);
  }
  report(id, all_passed(results) && secs < budget_s,
         std::string(name) + ": " + suite_detail(results, secs));
}

}  // namespace

int main() {
  try {
    criterion_headline();
    criterion_table1();
    criteria_ordering_and_convergence();
    criterion_suite(5, "symmetry suite", 10.0, [] { return run_symmetry_suite(1); });
    criterion_suite(6, "gradient suite", 30.0, [] { return run_gradient_suite(1, 50); });
    criterion_suite(7, "AUC oracle", 1e9, [] { return run_auc_suite(1, 100); });
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance aborted: %s\n", e.what());
    return 1;
  }
  return 0;
}
