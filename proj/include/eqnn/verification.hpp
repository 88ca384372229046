// Self-checks run by `eqnn_bench verify` and the acceptance binary. Each
// suite needs no training and reports one line per check.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace eqnn {

struct CheckResult {
  std::string name;
  bool passed = false;
  double error = 0.0;      // worst deviation observed
  double tolerance = 0.0;
};

/// Gate equivariance of the EQNN block, the |++> preparation, observable
/// identities, the embedding-intertwiner table, EQNN output symmetries and
/// dataset grid symmetry, all at 1e-10.
std::vector<CheckResult> run_symmetry_suite(std::uint64_t seed = 1);

/// Parameter-shift and backprop gradients against central finite
/// differences (h = 1e-5) over `configs` random configurations per model
/// family; relative error <= 1e-5.
std::vector<CheckResult> run_gradient_suite(std::uint64_t seed = 1, std::size_t configs = 50);

/// Trapezoidal AUC against the pairwise oracle on random instances with
/// ties, to 1e-12.
std::vector<CheckResult> run_auc_suite(std::uint64_t seed = 1, std::size_t instances = 100);

bool all_passed(const std::vector<CheckResult>& results);
void print_report(std::ostream& out, const std::vector<CheckResult>& results);

/// ||a - b||_inf / max(||a||_inf, ||b||_inf), 0 when both vanish.
double relative_error(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace eqnn
