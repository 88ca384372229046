#include "eqnn/qsim.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace eqnn {
namespace {

constexpr Complex kI{0.0, 1.0};

void check_targets(const Gate& gate, int n_qubits) {
  const int k = arity(gate.kind);
  for (int i = 0; i < k; ++i) {
    const int q = gate.targets[static_cast<std::size_t>(i)];
    if (q < 0 || q >= n_qubits) {
      throw std::out_of_range("gate target " + std::to_string(q) +
                              " outside register of " +
                              std::to_string(n_qubits) + " qubits");
    }
  }
  if (k == 2 && gate.targets[0] == gate.targets[1]) {
    throw std::invalid_argument("RZZ requires two distinct targets");
  }
}

// Bit position of qubit q inside the basis index (qubit 0 is the MSB).
std::size_t bit_of(int q, int n_qubits) {
  return std::size_t{1} << static_cast<unsigned>(n_qubits - 1 - q);
}

// 2x2 single-qubit matrix as four scalars: [[a, b], [c, d]].
struct Mat2 {
  Complex a, b, c, d;
};

Mat2 single_qubit_matrix(GateKind kind, double angle) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  switch (kind) {
    case GateKind::RX:
      return {c, -kI * s, -kI * s, c};
    case GateKind::RY:
      return {c, -s, s, c};
    case GateKind::RZ:
      return {Complex{c, -s}, 0.0, 0.0, Complex{c, s}};
    case GateKind::RZZ:
      break;
  }
  throw std::logic_error("not a single-qubit gate");
}

}  // namespace

int arity(GateKind kind) { return kind == GateKind::RZZ ? 2 : 1; }

const char* to_string(GateKind kind) {
  switch (kind) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::RZZ: return "RZZ";
  }
  return "?";
}

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, " +
                                std::to_string(kMaxQubits) + "]");
  }
  amps_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<Complex> amps)
    : n_qubits_(n_qubits), amps_(std::move(amps)) {}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
  const std::size_t dim = amplitudes.size();
  if (dim < 2 || !std::has_single_bit(dim)) {
    throw std::invalid_argument("amplitude count must be a power of two >= 2");
  }
  const int n = std::countr_zero(dim);
  if (n > kMaxQubits) {
    throw std::invalid_argument("too many qubits");
  }
  double total = 0.0;
  for (const auto& a : amplitudes) total += std::norm(a);
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("amplitudes are not normalized");
  }
  return StateVector(n, std::move(amplitudes));
}

StateVector StateVector::basis(int n_qubits, std::size_t index) {
  StateVector s(n_qubits);
  if (index >= s.dim()) throw std::out_of_range("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

double StateVector::norm() const {
  double total = 0.0;
  for (const auto& a : amps_) total += std::norm(a);
  return std::sqrt(total);
}

void StateVector::apply(const Gate& gate) {
  check_targets(gate, n_qubits_);
  const std::size_t dim = amps_.size();

  if (gate.kind == GateKind::RZZ) {
    // Diagonal: phase e^{-i theta/2} when the two bits agree, e^{+i theta/2}
    // when they differ.
    const std::size_t ba = bit_of(gate.targets[0], n_qubits_);
    const std::size_t bb = bit_of(gate.targets[1], n_qubits_);
    const Complex same = std::polar(1.0, -gate.angle / 2.0);
    const Complex diff = std::conj(same);
    for (std::size_t i = 0; i < dim; ++i) {
      const bool a = (i & ba) != 0;
      const bool b = (i & bb) != 0;
      amps_[i] *= (a == b) ? same : diff;
    }
    return;
  }

  const Mat2 m = single_qubit_matrix(gate.kind, gate.angle);
  const std::size_t stride = bit_of(gate.targets[0], n_qubits_);
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      const std::size_t i0 = base + off;
      const std::size_t i1 = i0 + stride;
      const Complex v0 = amps_[i0];
      const Complex v1 = amps_[i1];
      amps_[i0] = m.a * v0 + m.b * v1;
      amps_[i1] = m.c * v0 + m.d * v1;
    }
  }
}

void StateVector::apply(const CMatrix& op) {
  if (static_cast<std::size_t>(op.rows()) != dim() ||
      static_cast<std::size_t>(op.cols()) != dim()) {
    throw std::invalid_argument("operator dimension does not match state");
  }
  Eigen::Map<const Eigen::VectorXcd> in(amps_.data(),
                                        static_cast<Eigen::Index>(dim()));
  Eigen::VectorXcd out = op * in;
  for (std::size_t i = 0; i < dim(); ++i) {
    amps_[i] = out(static_cast<Eigen::Index>(i));
  }
}

Observable::Observable(CMatrix matrix) : matrix_(std::move(matrix)) {
  const auto n = matrix_.rows();
  if (n != matrix_.cols() || n < 2 ||
      !std::has_single_bit(static_cast<std::size_t>(n))) {
    throw std::invalid_argument("observable must be square with 2^n rows");
  }
  if (max_abs_diff(matrix_, matrix_.adjoint()) > 1e-12) {
    throw std::invalid_argument("observable is not Hermitian");
  }
}

StateVector apply_gate(StateVector state, const Gate& gate) {
  state.apply(gate);
  return state;
}

double expectation(const StateVector& state, const Observable& obs) {
  if (state.dim() != obs.dim()) {
    throw std::invalid_argument("observable dimension " +
                                std::to_string(obs.dim()) +
                                " does not match state dimension " +
                                std::to_string(state.dim()));
  }
  const auto& m = obs.matrix();
  const auto amps = state.amplitudes();
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < amps.size(); ++i) {
    Complex row{0.0, 0.0};
    for (std::size_t j = 0; j < amps.size(); ++j) {
      row += m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
             amps[j];
    }
    acc += std::conj(amps[i]) * row;
  }
  if (std::abs(acc.imag()) >= 1e-10) {
    throw std::logic_error("expectation value has imaginary part " +
                           std::to_string(acc.imag()));
  }
  return acc.real();
}

CMatrix generator(GateKind kind) {
  CMatrix g(2, 2);
  switch (kind) {
    case GateKind::RX:
      g << 0.0, 1.0, 1.0, 0.0;
      return g;
    case GateKind::RY:
      g << 0.0, -kI, kI, 0.0;
      return g;
    case GateKind::RZ:
      g << 1.0, 0.0, 0.0, -1.0;
      return g;
    case GateKind::RZZ: {
      const CMatrix z = generator(GateKind::RZ);
      return kron(z, z);
    }
  }
  throw std::logic_error("unknown gate kind");
}

CMatrix gate_unitary(const Gate& gate) {
  const CMatrix g = generator(gate.kind);
  const CMatrix id = CMatrix::Identity(g.rows(), g.cols());
  return std::cos(gate.angle / 2.0) * id - kI * std::sin(gate.angle / 2.0) * g;
}

CMatrix register_unitary(const Gate& gate, int n_qubits) {
  check_targets(gate, n_qubits);
  // Built from gate_unitary() by index bookkeeping, independently of the
  // in-place kernel: U[i,j] = u[sub(i), sub(j)] when i and j agree on every
  // non-target bit, else 0.
  const CMatrix small = gate_unitary(gate);
  const int k = arity(gate.kind);
  std::size_t target_mask = 0;
  for (int t = 0; t < k; ++t) {
    target_mask |= bit_of(gate.targets[static_cast<std::size_t>(t)], n_qubits);
  }
  const auto sub = [&](std::size_t index) {
    std::size_t s = 0;
    for (int t = 0; t < k; ++t) {
      const bool bit =
          (index & bit_of(gate.targets[static_cast<std::size_t>(t)], n_qubits)) != 0;
      s = (s << 1) | static_cast<std::size_t>(bit);
    }
    return static_cast<Eigen::Index>(s);
  };
  const std::size_t dim = std::size_t{1} << n_qubits;
  CMatrix u = CMatrix::Zero(static_cast<Eigen::Index>(dim),
                            static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if ((i & ~target_mask) != (j & ~target_mask)) continue;
      u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          small(sub(i), sub(j));
    }
  }
  return u;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("matrix shapes differ");
  }
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace eqnn
