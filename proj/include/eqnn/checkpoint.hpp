// Plain-text model checkpoints: one header line describing the model, then
// one parameter per line with 17 significant digits.
//
//   EQNN depth=10 dataset=FullyAntiSymmetric params=20
//   QNN depth=4 dataset=Symmetric params=12
//   DNN layers=2,4,2 activation=tanh params=22
//   ENN group=Full equivariant=3 head=4 activation=tanh params=35
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "eqnn/training.hpp"

namespace eqnn {

std::string checkpoint_header(const AnyModel& model);

void write_checkpoint(std::ostream& out, const AnyModel& model);
void write_checkpoint(const std::filesystem::path& path, const AnyModel& model);

/// Rebuilds the model described by the header and loads its parameters.
/// Throws std::runtime_error on a malformed file.
AnyModel read_checkpoint(std::istream& in);
AnyModel read_checkpoint(const std::filesystem::path& path);

}  // namespace eqnn
