// INI-style experiment files: flat key = value pairs grouped in sections.
//
//   [experiment]
//   dataset = full            ; sym | anti | full
//   model = EQNN              ; DNN | ENN | QNN | EQNN
//   depth = 10
//   hidden = 4,4
//   equivariant_width = 3
//   param_budget = 0
//   budget_layers = 2
//   activation = tanh
//   n_train = 200
//   n_test = 2000
//   seeds = 1,2,3,4,5
//   output_dir = out
//
//   [train]
//   epochs = 30
//   batch_size = 20
//   lr = 0.05
//   eval_each_epoch = true
//
//   [sweep]
//   axis = train_size         ; train_size | param_count
//   values = 100,200,300
//   fixed = 20
//   models = EQNN,QNN,DNN,ENN
//
// Every key is optional; unknown sections or keys are rejected.
#pragma once

#include <filesystem>
#include <iosfwd>

#include "eqnn/experiment.hpp"

namespace eqnn {

/// Throws ConfigError on syntax errors, unknown keys or bad values.
ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// The [sweep] section plus the [experiment]/[train] template applied to
/// each listed model.
SweepSpec parse_sweep_spec(std::istream& in);
SweepSpec load_sweep_spec(const std::filesystem::path& path);

std::vector<std::size_t> parse_size_list(std::string_view text);

}  // namespace eqnn
