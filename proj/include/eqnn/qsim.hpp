// Dense statevector simulation for the small circuits used by the quantum
// classifiers (n <= 8 qubits, the models themselves use 1 or 2).
//
// Gate convention: every rotation is U(theta) = exp(-i * theta * G / 2) with
// G in {X, Y, Z, Z(x)Z}. Because G^2 = I, U(theta) = cos(theta/2) I - i
// sin(theta/2) G, the period is 4*pi, and the parameter-shift rule with shift
// pi/2 is exact.
//
// Qubit ordering: qubit 0 is the most significant bit of the basis index, so
// a two-qubit basis state |q0 q1> has index 2*q0 + q1 and the register
// operator for "A on qubit 0, B on qubit 1" is kron(A, B).
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace eqnn {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

inline constexpr int kMaxQubits = 8;

enum class GateKind { RX, RY, RZ, RZZ };

/// Number of qubits a gate kind acts on (1, or 2 for RZZ).
int arity(GateKind kind);
const char* to_string(GateKind kind);

struct Gate {
  GateKind kind = GateKind::RZ;
  std::array<int, 2> targets{0, -1};  // second entry only used by RZZ
  double angle = 0.0;

  static Gate rx(int q, double angle) { return {GateKind::RX, {q, -1}, angle}; }
  static Gate ry(int q, double angle) { return {GateKind::RY, {q, -1}, angle}; }
  static Gate rz(int q, double angle) { return {GateKind::RZ, {q, -1}, angle}; }
  static Gate rzz(int a, int b, double angle) {
    return {GateKind::RZZ, {a, b}, angle};
  }
};

class StateVector {
 public:
  /// |0...0> on n qubits.
  explicit StateVector(int n_qubits);

  /// Takes ownership of raw amplitudes; the length must be a power of two
  /// and the vector must be normalized to 1e-12.
  static StateVector from_amplitudes(std::vector<Complex> amplitudes);
  static StateVector basis(int n_qubits, std::size_t index);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  double norm() const;

  /// In-place gate application; the pure apply_gate() wraps this.
  void apply(const Gate& gate);
  /// Applies a dense 2^n x 2^n operator. Used by verification tooling only.
  void apply(const CMatrix& op);

 private:
  StateVector(int n_qubits, std::vector<Complex> amps);

  int n_qubits_;
  std::vector<Complex> amps_;
};

class Observable {
 public:
  /// Throws std::invalid_argument unless the matrix is square, 2^n sized and
  /// Hermitian to 1e-12.
  explicit Observable(CMatrix matrix);

  const CMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

 private:
  CMatrix matrix_;
};

/// Returns U|psi>. Throws std::out_of_range for a target >= n and
/// std::invalid_argument for an RZZ with equal targets.
StateVector apply_gate(StateVector state, const Gate& gate);

/// <psi|O|psi>. Throws std::invalid_argument on dimension mismatch and
/// std::logic_error if the imaginary part exceeds 1e-10.
double expectation(const StateVector& state, const Observable& obs);

/// Generator G of the gate kind (2x2 Pauli or 4x4 Z(x)Z).
CMatrix generator(GateKind kind);

/// Dense 2x2 (or 4x4 for RZZ) unitary of the gate on its own targets.
CMatrix gate_unitary(const Gate& gate);

/// The gate's unitary lifted to the full n-qubit register.
CMatrix register_unitary(const Gate& gate, int n_qubits);

/// Kronecker product, kron(a, b)[i*rb + k, j*cb + l] = a[i,j] * b[k,l].
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// max_ij |a_ij - b_ij|.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

}  // namespace eqnn
